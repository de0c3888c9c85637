"""End-to-end acceptance checks; each prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (the summary lines are
written straight to the terminal) or ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from supersymbols.coeff import ALPHA, SIGMA1, SIGMA2
from supersymbols.contact import k4_family
from supersymbols.gamma import (
    ODD_GENERATORS,
    build_gamma,
    contraction_limit_check,
    gamma_alpha,
    gamma_alpha_generators,
    generate_from_odd,
    hom_check,
    jacobi_check,
    phi_map,
    psl_check,
    relations_check,
    span_closure,
    variant_bracket,
)
from supersymbols.report import SuiteConfig
from supersymbols.suites import run_suite


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail

    return emit


def _suite(name, **kw):
    report = run_suite(SuiteConfig(name, **kw))
    bad = report.failures()
    return report, (f"{len(report.checks)} checks, {len(bad)} failed" + (f"; first: {bad[0].id}" if bad else ""))


def test_01_poisson_generators_realize_the_family(verdict):
    v = hom_check(phi_map(ALPHA, "poisson"), gamma_alpha(), variant_bracket("poisson"))
    gens = gamma_alpha_generators(ALPHA, "poisson")
    dim = generate_from_odd([gens[l] for l in ODD_GENERATORS], variant_bracket("poisson")).dim
    ok = v.passed and not v.residuals and v.checked == 289 and dim == 17
    verdict(1, "17x17 homomorphism onto Poisson generators, symbolic alpha; odd part generates dim 17",
            ok, f"{len(v.residuals)} residuals, rank {v.rank}, generated dim {dim}")


def test_02_relation_ledger_in_every_realization(verdict):
    failures = []
    for variant in ("poisson", "deformed", "pseudo_h", "matrices"):
        failures += [(variant, x, y) for x, y, r in relations_check(variant) if not r.is_zero()]
    verdict(2, "eight odd-odd relations hold in all four generator sets", not failures, f"failures {failures}")


def test_03_deformed_generators_close_and_contract(verdict):
    gens = gamma_alpha_generators(ALPHA, "deformed")
    open_pairs = span_closure(gens, variant_bracket("deformed"))
    limit = contraction_limit_check(gens, gamma_alpha_generators(ALPHA, "poisson"))
    exact = all(gens[l].exact for l in gens)
    ok = not open_pairs and limit.passed and exact
    verdict(3, "deformed generators close under (1/h)[,]_h; h = 0 gives the Poisson set termwise",
            ok, f"{len(open_pairs)} open pairs, limit {'ok' if limit.passed else 'mismatch'}")


def test_04_contact_closure_and_cocycles(verdict):
    closure, d1 = _suite("k4-closure", range=4)
    cocycles, d2 = _suite("cocycles", range=3)
    ok = closure.passed and cocycles.passed
    assert any(c.id.startswith("control") for c in cocycles.checks)
    verdict(4, "16 contact fields close for |n| <= 4; both cocycles pass, perturbed ones fail",
            ok, f"closure: {d1}; cocycles: {d2}")


def test_05_matrix_embedding_with_central_term(verdict):
    report, detail = _suite("matrix-embed-I", range=3)
    verdict(5, "matrix bracket of images = image of bracket + cocycle * identity, |n|,|k| <= 3",
            report.passed, detail)


def test_06_second_embedding_dictionary(verdict):
    dictionary, d1 = _suite("dictionary-IJ", range=3)
    rep, d2 = _suite("rep-consistency", range=3)
    verdict(6, "second embedding dictionary exact; module action matches matrices on m in [-4, 4]",
            dictionary.passed and rep.passed, f"dictionary: {d1}; action: {d2}")


def test_07_weyl_matrices_realize_the_family(verdict):
    report, detail = _suite("gamma-thm63")
    verdict(7, "17 Weyl matrices satisfy the structure constants and equal the embedding combinations",
            report.passed, detail)


def test_08_jacobi_boundary(verdict):
    generic = jacobi_check(build_gamma(SIGMA1, SIGMA2, -SIGMA1 - SIGMA2))
    off = jacobi_check(build_gamma(1, 1, 1))
    verdict(8, "Jacobi holds iff sigma1 + sigma2 + sigma3 = 0 (symbolic pass, (1,1,1) fails)",
            not generic and bool(off), f"{len(generic)} vs {len(off)} violating triples")


def test_09_fourteen_dimensional_ideals(verdict):
    plus, minus = psl_check(1), psl_check(-1)
    control = psl_check(2, span_of=1)
    ok = plus.passed and minus.passed and not control.closed
    verdict(9, "dim-14 centerless ideals with sl(2) quotient at alpha = +-1; alpha = 2 span fails",
            ok, f"kappa {plus.kappa}, {minus.kappa}; control open pairs {control.open_pairs}")


def test_10_contraction(verdict):
    report, detail = _suite("contraction", range=3)
    depths = [int(c.id.split("window ")[1].rstrip(")")) for c in report.checks if "window" in c.id]
    ok = report.passed and len(depths) == 4 and min(depths) >= 8
    verdict(10, "first-order contraction on all generator pairs; tau^-1 limits agree on a window >= 8",
            ok, f"{detail}; window depths {depths}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
