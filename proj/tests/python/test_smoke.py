import json
import pathlib

import pytest

import supercover as sc

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


@pytest.fixture(scope="module")
def quadric():
    atlas = sc.Atlas.load(str(DATA / "superquadric.json"))
    atlas.validate()
    return atlas


def test_atlas_round_trip(quadric):
    assert quadric.kind == "super"
    assert quadric.chart_ids == ["U0", "U1"]
    again = sc.Atlas.from_json(quadric.to_json())
    assert sc.atlas_to_dict(again) == sc.atlas_to_dict(quadric)


def test_cocycle_check(quadric):
    report = sc.check_cocycle(quadric)
    assert report["ok"] is True
    assert report["failures"] == []


def test_covering_and_reconstruction(quadric):
    covered = sc.build_covering_atlas(quadric, 2)
    assert covered.kind == "graded"
    assert covered.degree == 2
    assert sc.check_cocycle(covered)["ok"] is True
    back = sc.reconstruct_odd2(covered)
    assert back.kind == "super"
    assert back.chart_ids == quadric.chart_ids
    assert sc.check_cocycle(back)["ok"] is True


def test_lift_function(quadric):
    text = sc.lift_function(quadric, "U0", "1/x", 2)
    assert text == "-(1/y_1__0^2)*y_1__2 + 1/y_1__0"


def test_obstruction_class(quadric):
    om = sc.omega2(quadric)
    assert om["vanishes"] is False
    assert "(U0,U1)" in om["cocycle"]

    at = sc.atiyah_p2(quadric)
    assert at["matches_log_form"] is True

    split = sc.omega2(sc.gr_atlas(quadric))
    assert split["vanishes"] is True

    identity = sc.Atlas.load(str(DATA / "identity-atlas.json"))
    assert sc.omega2(identity)["vanishes"] is True


def test_donagi_witten(quadric):
    doc = sc.donagi_witten(quadric)
    assert doc["ok"] is True
    assert doc["failures"] == []
    assert "(U0,U1)" in doc["matrices"]
    assert "(U0,U1)" in doc["extension"]


def test_injectivity(quadric):
    assert sc.check_injectivity(quadric, 2)["all_injective"] is True
    low = sc.check_injectivity(quadric, 1)
    assert low["all_injective"] is False
    invisible = {c["id"]: c["invisible"] for c in low["charts"]}
    assert invisible["U0"] == ["xi1*xi2"]


def test_loop_and_realization():
    g = sc.LieSuperalgebra.load(str(DATA / "gl11.json"))
    assert sc.algebra_to_dict(g) == sc.algebra_to_dict(sc.glmn(1, 1))

    loop = sc.build_loop(g, 3)
    assert loop.max_degree == 3
    alg = loop.algebra
    assert alg.dim == 8
    alg.validate((0, 3))

    realized = sc.gl_matrix_realization(1, 1, 3)
    assert sc.algebra_to_dict(realized) == sc.algebra_to_dict(alg)


def test_lift_homomorphism():
    g = sc.LieSuperalgebra.load(str(DATA / "gl11.json"))
    loop = sc.build_loop(g, 3)
    base_index = {name: i for i, name in enumerate(g.basis_names)}
    psi = [{base_index[name.rsplit("_t", 1)[0]]: 1} for name in loop.algebra.basis_names]
    lifted = sc.lift_homomorphism(loop.algebra, psi, loop)
    assert lifted["unique"] is True
    assert lifted["images"][0] == {"0": "1"}
    assert all(images == {str(l): "1"} for l, images in enumerate(lifted["images"]))


def test_error_paths():
    with pytest.raises(RuntimeError):
        sc.Atlas.load(str(DATA / "no-such-file.json"))
    with pytest.raises(ValueError):
        sc.LieSuperalgebra.from_json(json.dumps({"basis": []}))
    g = sc.glmn(1, 1)
    with pytest.raises(ValueError):
        sc.build_loop(g, -1)
