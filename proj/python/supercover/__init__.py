"""Exact truncated nonnegatively graded coverings of supermanifolds.

Thin wrapper over the C++ core: atlases and algebras stay opaque handles,
structured results come back as plain dicts decoded from the core's
canonical JSON.
"""

from __future__ import annotations

import json as _json

from ._core import (
    Atlas,
    LieSuperalgebra,
    LoopAlgebra,
    build_covering_atlas,
    build_loop,
    gl_matrix_realization,
    glmn,
    gr_atlas,
    lift_function,
    reconstruct_odd2,
)
from . import _core as _core


def check_cocycle(atlas: Atlas) -> dict:
    """Pairwise and triple cocycle conditions; failures list each residual."""
    return _json.loads(_core.check_cocycle_json(atlas))


def omega2(atlas: Atlas) -> dict:
    """First obstruction class of a super atlas with its vanishing flag."""
    return _json.loads(_core.omega2_json(atlas))


def atiyah_p2(atlas: Atlas) -> dict:
    """Degree-two covering route to the obstruction, checked against omega2."""
    return _json.loads(_core.atiyah_p2_json(atlas))


def donagi_witten(atlas: Atlas) -> dict:
    """Differential-operator transition matrices, their gluing report, and,
    in odd dimension two, the extension data carrying the class."""
    return _json.loads(_core.donagi_witten_json(atlas))


def check_injectivity(atlas: Atlas, degree: int) -> dict:
    """Which monomials a degree-k covering can still see, per chart."""
    return _json.loads(_core.check_injectivity_json(atlas, degree))


def lift_homomorphism(source: LieSuperalgebra, psi, loop: LoopAlgebra) -> dict:
    """Lift psi: source -> loop.base through the evaluation projection.

    psi is a list of {basis index: coefficient} maps, one per source basis
    element; keys and values may be ints or strings.
    """
    rows = [{str(k): str(v) for k, v in row.items()} for row in psi]
    return _json.loads(_core.lift_homomorphism_json(source, _json.dumps(rows), loop))


def atlas_to_dict(atlas: Atlas) -> dict:
    return _json.loads(atlas.to_json())


def algebra_to_dict(algebra: LieSuperalgebra) -> dict:
    return _json.loads(algebra.to_json())


__all__ = [
    "Atlas",
    "LieSuperalgebra",
    "LoopAlgebra",
    "algebra_to_dict",
    "atiyah_p2",
    "atlas_to_dict",
    "build_covering_atlas",
    "build_loop",
    "check_cocycle",
    "check_injectivity",
    "donagi_witten",
    "gl_matrix_realization",
    "glmn",
    "gr_atlas",
    "lift_function",
    "lift_homomorphism",
    "omega2",
    "reconstruct_odd2",
]
