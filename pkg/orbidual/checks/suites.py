"""Built-in check suites, liecore through loopx."""

from __future__ import annotations

import numpy as np

from orbidual.checks import CheckContext, CheckResult, register_suite
from orbidual.dynamics.hamiltonians import sigma_hamiltonian
from orbidual.dynamics.lagrangians import get_lagrangian
from orbidual.dynamics.flows import lie_poisson_flow
from orbidual.dynamics.sigma import master_identity_residual, random_involution, sigma_blocks
from orbidual.extension import get_cocycle
from orbidual.extension.checks import alpha_as_dual, check_alpha_condition, check_compatibility
from orbidual.extension.cocycle import CoboundaryCocycle, ExtendedDual, ZeroCocycle
from orbidual.extension.poisson import bracket_of_differentials, kk_form, orbit_tangent, shift_iso
from orbidual.groups import get_group
from orbidual.groups.double import N_FIRST, NSTAR_FIRST, dress, dressing_generator
from orbidual.hamspaces.chiral import ChiralSpace
from orbidual.hamspaces.cotangent import CotangentN, CotangentNstar
from orbidual.hamspaces.diagnostics import action_law_residual, equivariance_residual, momentum_map_residual
from orbidual.hamspaces.simple import CotangentGroup
from orbidual.liecore import get_algebra, list_algebras
from orbidual.liecore.double import DoubleLieAlgebra
from orbidual.loopx.fourier import FourierLoop, gamma_cocycle, loop_bracket
from orbidual.loopx.lagrangian import monodromic_lagrangian, monodromic_lagrangian_space, space_velocity
from orbidual.loopx.paths import LoopCocycle, LoopGroupPath, monodromy

CARTAN_ALPHA = np.array([0.3, 0.0, 0.0])
ROOT_ALPHA = np.array([0.0, 0.3, 0.0])
MIXED_THETA = np.array([0.3, 0.2, 0.1, 0.4, 0.5, 0.6])


def _worst(values) -> float:
    return max((float(v) for v in values), default=0.0)


@register_suite("liecore")
def liecore_suite(ctx: CheckContext) -> list[CheckResult]:
    out = []
    for name in list_algebras():
        alg = get_algebra(name)
        total = alg.total if isinstance(alg, DoubleLieAlgebra) else alg
        if ctx.corrupt:
            total = total.corrupted(0, 1, total.dim - 1, 0.25)
        jacobi, witness = total.jacobi_residual()
        c = total.structure
        out += [
            CheckResult("liecore", f"{name}.jacobi", jacobi, 1e-12, f"worst at {witness}"),
            CheckResult("liecore", f"{name}.antisymmetry", float(np.abs(c + c.transpose(1, 0, 2)).max()), 1e-14),
            CheckResult("liecore", f"{name}.pairing_invariance", total.invariance_residual(), 1e-12),
        ]
    return out


@register_suite("groups")
def groups_suite(ctx: CheckContext) -> list[CheckResult]:
    out = []
    for name in ("lu_weinstein_su2", "abelian_double"):
        double = get_group(name)
        total = double.total
        fac, member, hom, gen = [], [], [], []
        for _ in range(ctx.samples):
            l = total.exp(0.5 * ctx.rng.standard_normal(total.algebra.dim))
            k = total.exp(0.5 * ctx.rng.standard_normal(total.algebra.dim))
            for order in (N_FIRST, NSTAR_FIRST):
                f = double.factorize(l, order)
                fac.append(float(np.linalg.norm(f.product() - l)))
                member.append(max(double.n_group.membership_residual(f.g),
                                  double.nstar_group.membership_residual(f.htilde)))
            hom.append(np.abs(total.adjoint_matrix(l @ k) - total.adjoint_matrix(l) @ total.adjoint_matrix(k)).max())
            g = double.factorize(l, N_FIRST).g
            xi = ctx.rng.standard_normal(double.n)
            t = 1e-5
            plus = dress(double, double.nstar_group.exp(-t * xi), g)
            minus = dress(double, double.nstar_group.exp(t * xi), g)
            body = double.n_group.pullback(np.linalg.inv(g) @ (plus - minus) / (2.0 * t), check=False)
            gen.append(np.abs(body - dressing_generator(double, xi, g)).max())
        out += [
            CheckResult("groups", f"{name}.factorization", _worst(fac), 1e-10),
            CheckResult("groups", f"{name}.factor_membership", _worst(member), 1e-10),
            CheckResult("groups", f"{name}.adjoint_homomorphism", _worst(hom), 1e-10),
            CheckResult("groups", f"{name}.dressing_generator", _worst(gen), 1e-6),
        ]
    se2 = get_group("rigid_body_se2")
    members = [se2.membership_residual(se2.exp(ctx.rng.standard_normal(3))) for _ in range(ctx.samples)]
    out.append(CheckResult("groups", "rigid_body_se2.membership", _worst(members), 1e-12))
    return out


@register_suite("extension")
def extension_suite(ctx: CheckContext) -> list[CheckResult]:
    double = get_group("lu_weinstein_su2")
    alg = double.algebra
    total = double.total
    d = alg.dim
    theta = ctx.rng.standard_normal(d)
    boundary = get_cocycle("coboundary:" + ",".join(repr(float(v)) for v in theta), total)
    identity = []
    for _ in range(ctx.samples):
        l = total.exp(0.5 * ctx.rng.standard_normal(d))
        k = total.exp(0.5 * ctx.rng.standard_normal(d))
        identity.append(boundary.identity_residual(l, k))

    alpha_dual = alpha_as_dual(CARTAN_ALPHA, alg)
    base = ZeroCocycle(total)
    shifted = base.shifted(-alpha_dual)
    intertwine = []
    for _ in range(ctx.samples):
        p = ExtendedDual(ctx.rng.standard_normal(d), 1.0)
        x, y = ctx.rng.standard_normal(d), ctx.rng.standard_normal(d)
        moved = shift_iso(p, alpha_dual)
        intertwine.append(abs(bracket_of_differentials(base, moved.xi, 1.0, x, y)
                              - bracket_of_differentials(shifted, p.xi, 1.0, x, y)))

    se2 = get_group("se2")
    se2_base = get_cocycle("coboundary:0.5,0,1", se2)
    orbit_form = []
    for _ in range(ctx.samples):
        shift = ctx.rng.standard_normal(3)
        se2_shifted = se2_base.shifted(-shift)
        p = ExtendedDual(ctx.rng.standard_normal(3), 1.0)
        v = orbit_tangent(se2_shifted, p, ctx.rng.standard_normal(3))
        w = orbit_tangent(se2_shifted, p, ctx.rng.standard_normal(3))
        orbit_form.append(abs(kk_form(se2_shifted, p, v, w) - kk_form(se2_base, shift_iso(p, shift), v, w)))

    cartan = check_alpha_condition(CARTAN_ALPHA, alg)
    root = check_alpha_condition(ROOT_ALPHA, alg)
    compat = check_compatibility(base, double, samples=ctx.samples)
    mixed = check_compatibility(CoboundaryCocycle(total, MIXED_THETA), double, samples=ctx.samples)
    return [
        CheckResult("extension", "coboundary.identity", _worst(identity), 1e-10),
        CheckResult("extension", "coboundary.differential", boundary.differential_residual(), 1e-8),
        CheckResult("extension", "coboundary.antisymmetry", boundary.antisymmetry_residual(), 1e-12),
        CheckResult("extension", "shift_iso.intertwining", _worst(intertwine), 1e-10),
        CheckResult("extension", "shift_iso.orbit_form", _worst(orbit_form), 1e-9),
        CheckResult("extension", "zero.compatibility", compat.worst_residual, 1e-9),
        CheckResult("extension", "mixed_coboundary.incompatible_detected", 0.0 if not mixed.ok else 1.0, 0.5,
                    f"worst residual {mixed.worst_residual:.3e}"),
        CheckResult("extension", "alpha_condition.cartan", cartan.worst_residual, 1e-10),
        CheckResult("extension", "alpha_condition.root_detected", 0.0 if not root.ok else 1.0, 0.5,
                    f"root residual {root.worst_residual:.3e}"),
    ]


@register_suite("hamspaces")
def hamspaces_suite(ctx: CheckContext) -> list[CheckResult]:
    double = get_group("lu_weinstein_su2")
    spaces = {
        "cotangent_N.dhat0": CotangentN(double, alpha=CARTAN_ALPHA),
        "cotangent_N.dhatAlpha": CotangentN(double, alpha=CARTAN_ALPHA, action="dhatAlpha", momentum="mu0alpha"),
        "cotangent_Nstar.bhat": CotangentNstar(double, alpha=CARTAN_ALPHA),
        "chiral": ChiralSpace(double.total),
        "cotangent_group": CotangentGroup(get_group("rigid_body_se2")),
    }
    out = []
    for name, space in spaces.items():
        acting = space.acting_group
        equiv, law, mom = [], [], []
        for _ in range(max(1, ctx.samples // 2)):
            base = space.base_group.exp(0.4 * ctx.rng.standard_normal(space.base_group.algebra.dim))
            point = space.point(base, ctx.rng.standard_normal(space.fiber_dim))
            l1 = acting.exp(0.4 * ctx.rng.standard_normal(acting.algebra.dim))
            l2 = acting.exp(0.4 * ctx.rng.standard_normal(acting.algebra.dim))
            equiv.append(equivariance_residual(space, l1, point))
            law.append(action_law_residual(space, l1, l2, point))
            mom.append(momentum_map_residual(space, point, ctx.rng.standard_normal(acting.algebra.dim)))
        out += [
            CheckResult("hamspaces", f"{name}.equivariance", _worst(equiv), 1e-9),
            CheckResult("hamspaces", f"{name}.action_law", _worst(law), 1e-9),
            CheckResult("hamspaces", f"{name}.momentum_map", _worst(mom), 1e-5),
        ]
    return out


@register_suite("dynamics")
def dynamics_suite(ctx: CheckContext) -> list[CheckResult]:
    double = get_group("lu_weinstein_su2")
    alg = double.algebra
    involution, adjoint, reassembly, symmetry, legendre, master = [], [], [], [], [], []
    for _ in range(ctx.samples):
        op = random_involution(alg, ctx.rng)
        involution.append(op.involution_residual)
        adjoint.append(op.adjointness_residual)
        g = double.n_group.exp(0.3 * ctx.rng.standard_normal(double.n))
        blocks = sigma_blocks(double, op, g)
        reassembly.append(blocks.reassembly_residual())
        symmetry.append(blocks.symmetry_residual())
        qdot, qprime = ctx.rng.standard_normal((2, double.n))
        master.append(master_identity_residual(blocks, qdot, qprime))
        family = get_lagrangian("Lsigma0", double, operator=op)
        legendre.append(family.legendre_residual(g, ctx.rng.standard_normal(double.n)))
    op = random_involution(alg, ctx.rng)
    h = sigma_hamiltonian(op.matrix, alg.psi)
    flow = lie_poisson_flow(h, ZeroCocycle(double.total), ExtendedDual(ctx.rng.standard_normal(alg.dim)), 0.5, 5e-3)
    energies = np.array([h(s.xi) for s in flow.states])
    return [
        CheckResult("dynamics", "operator.involution", _worst(involution), 1e-12),
        CheckResult("dynamics", "operator.self_adjoint", _worst(adjoint), 1e-12),
        CheckResult("dynamics", "sigma_blocks.reassembly", _worst(reassembly), 1e-10),
        CheckResult("dynamics", "sigma_blocks.symmetry", _worst(symmetry), 1e-10),
        CheckResult("dynamics", "sigma_blocks.master_identity", _worst(master), 1e-10),
        CheckResult("dynamics", "Lsigma0.legendre", _worst(legendre), 1e-10),
        CheckResult("dynamics", "lie_poisson.energy_drift", float(np.abs(energies - energies[0]).max()), 1e-7),
    ]


@register_suite("loopx")
def loopx_suite(ctx: CheckContext) -> list[CheckResult]:
    double = get_group("lu_weinstein_su2")
    total = double.total
    cocycle = LoopCocycle(total, k=1.0)
    identity = []
    for _ in range(max(1, ctx.samples // 4)):
        l = LoopGroupPath.from_loop(total, FourierLoop.random(total.algebra, 2, ctx.rng, 0.2))
        k = LoopGroupPath.from_loop(total, FourierLoop.random(total.algebra, 2, ctx.rng, 0.2))
        identity.append(cocycle.identity_residual(l, k))

    jacobi, gamma = [], []
    for _ in range(max(1, ctx.samples // 4)):
        x, y, z = (FourierLoop.random(total.algebra, 1, ctx.rng, 0.5) for _ in range(3))
        cyclic = (
            loop_bracket(loop_bracket(x, y), z)
            + loop_bracket(loop_bracket(y, z), x)
            + loop_bracket(loop_bracket(z, x), y)
        )
        jacobi.append(np.abs(cyclic.coeffs).max())
        gamma.append(abs(
            gamma_cocycle(1.0, loop_bracket(x, y), z)
            + gamma_cocycle(1.0, loop_bracket(y, z), x)
            + gamma_cocycle(1.0, loop_bracket(z, x), y)
        ))

    a, b = ctx.rng.standard_normal(total.algebra.dim), ctx.rng.standard_normal(total.algebra.dim)
    expected = 0.5 * total.algebra.pair(a, b)
    pairing = abs(gamma_cocycle(1.0, FourierLoop.cosine(total.algebra, a), FourierLoop.sine(total.algebra, b)) - expected)

    alpha = CARTAN_ALPHA
    mono = monodromy(FourierLoop.constant(double.nstar_group.algebra, alpha), double.nstar_group)
    exact = double.nstar_group.exp(2.0 * np.pi * alpha)

    op = random_involution(double.algebra, ctx.rng)
    gaps = []
    for _ in range(max(1, ctx.samples // 4)):
        gtilde = LoopGroupPath.from_loop(
            double.nstar_group, FourierLoop.random(double.nstar_group.algebra, 2, ctx.rng, 0.2)
        )
        v = FourierLoop.random(double.algebra.nstar_algebra, 2, ctx.rng, 0.2).samples(gtilde.P)
        body = monodromic_lagrangian(double, op, gtilde, v, alpha)
        space = monodromic_lagrangian_space(double, op, gtilde, space_velocity(double, gtilde, v), alpha)
        gaps.append(abs(body - space))
    return [
        CheckResult("loopx", "loop_cocycle.identity", _worst(identity), 1e-8),
        CheckResult("loopx", "loop_cocycle.antisymmetry", cocycle.antisymmetry_residual(), 1e-12),
        CheckResult("loopx", "gamma.cos_sin", pairing, 1e-12),
        CheckResult("loopx", "loop_bracket.jacobi", _worst(jacobi), 1e-12),
        CheckResult("loopx", "gamma.cocycle_identity", _worst(gamma), 1e-12),
        CheckResult("loopx", "monodromy.constant", float(np.abs(mono.matrix - exact).max()), 1e-8),
        CheckResult("loopx", "lagrangian.body_vs_space", _worst(gaps), 1e-8),
    ]
