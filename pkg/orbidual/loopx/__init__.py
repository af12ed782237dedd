"""Truncated loop algebras, loop-group paths with monodromy, and their flows."""

from __future__ import annotations

from orbidual.loopx.flows import EnlargedState, enlarged_flow, loop_collective_flow, wznw_flow
from orbidual.loopx.fourier import FourierLoop, TruncationPolicy, gamma_cocycle, loop_bracket, loop_pairing
from orbidual.loopx.lagrangian import monodromic_lagrangian, monodromic_lagrangian_space
from orbidual.loopx.paths import LoopCocycle, LoopGroupPath, embed_e_alpha, holonomy, monodromy

__all__ = [
    "EnlargedState",
    "FourierLoop",
    "LoopCocycle",
    "LoopGroupPath",
    "TruncationPolicy",
    "embed_e_alpha",
    "enlarged_flow",
    "gamma_cocycle",
    "holonomy",
    "loop_bracket",
    "loop_collective_flow",
    "loop_pairing",
    "monodromic_lagrangian",
    "monodromic_lagrangian_space",
    "monodromy",
    "wznw_flow",
]
