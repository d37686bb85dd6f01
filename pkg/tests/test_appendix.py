import pytest

from services.appendix import (
    GATED,
    KIND_TO_R,
    appendix_row,
    appendix_rows,
    inconsistent_rows,
    stated_dimension,
)
from services.counting import hilbert_direct
from services.delcon import hilbert_delcon
from services.errors import InvalidGraphError
from services.multigraph import generate_family


def _fast_rows():
    for kind, sizes in GATED.items():
        for n in sizes:
            if n <= 5:
                yield kind, n


def _slow_rows():
    for kind, sizes in GATED.items():
        for n in sizes:
            if n > 5:
                yield kind, n


@pytest.mark.parametrize("kind, n", list(_fast_rows()))
def test_small_rows_match_direct(kind, n):
    assert hilbert_direct(generate_family("complete", n), KIND_TO_R[kind]).coeffs == appendix_row(kind, n)


@pytest.mark.slow
@pytest.mark.parametrize("kind, n", list(_slow_rows()))
def test_large_rows_match(kind, n):
    g = generate_family("complete", n)
    r = KIND_TO_R[kind]
    h = hilbert_delcon(g, r) if r >= 0 else hilbert_direct(g, r)
    assert h.coeffs == appendix_row(kind, n)


def test_k6_external_by_deletion_contraction():
    assert hilbert_delcon(generate_family("complete", 6), 1).coeffs == appendix_row("external", 6)


def test_only_central_k8_and_k9_disagree_with_their_dimensions():
    assert [(kind, n) for kind, n, _, _ in inconsistent_rows()] == [("central", 8), ("central", 9)]
    assert inconsistent_rows()[1][3] == stated_dimension("central", 8)


def test_stated_dimensions():
    assert stated_dimension("external", 5) == 1623
    assert stated_dimension("internal", 6) == 3892
    assert stated_dimension("internal", 2) is None


def test_appendix_rows_gating():
    assert [n for n, _ in appendix_rows("internal")] == [3, 4, 5, 6, 7]
    assert [n for n, _ in appendix_rows("external", max_n=9, gated_only=False)] == list(range(2, 10))
    with pytest.raises(InvalidGraphError):
        appendix_row("outer", 3)
