"""Named verification suites.  Each suite returns every check it ran; none stops early."""

import random
import time
from fractions import Fraction

from . import gamma as gm
from .coeff import ALPHA, H, MU, ZERO, coeff
from .contact import (
    ClosureFailure,
    K4_LABELS,
    cocycle_verify,
    k4_basis,
    k4_family,
    k4_table,
    s2_family,
    virasoro_table,
)
from .psymbols import PSymbol, contraction_first_order
from .report import Check, Report
from .vspace import (
    BASIS_ORDER,
    M_INDEX,
    VVector,
    action_table,
    derived_matrix,
    field_action,
    matrix_action,
    rep_action,
)
from .weyl import GAMMA_LABELS, WeylSuperMatrix, embed_I, embed_J, gamma_from_embedding, supermatrix_bracket


class UnknownSuite(KeyError):
    pass


SAMPLE_ALPHAS = (0, 1, -1, 2, Fraction(1, 2))
LIMIT_WINDOW = 8


def _value(text, symbol):
    return symbol if text == "symbolic" else coeff(text)


class _Run:
    """Collects checks for one suite run."""

    def __init__(self, config):
        self.config = config
        self.alpha = _value(config.alpha, ALPHA)
        self.h = _value(config.h, H)
        self.mu = _value(config.mu, MU)
        self.checks = []
        self.notes = []

    def check(self, ident, fn):
        """fn() -> (passed, residual text)."""
        start = time.perf_counter()
        try:
            passed, residual = fn()
        except (ArithmeticError, ValueError, KeyError) as exc:
            passed, residual = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        timing = round(elapsed, 4) if self.config.timing else None
        self.checks.append(Check(ident, bool(passed), residual or "", timing))

    def modes(self):
        r = self.config.range
        return range(-r, r + 1)


# -- Gamma suites ---------------------------------------------------------------------------


def _hom_checks(run, tag, variant, alpha, h=H):
    g = gm.gamma_alpha(alpha)
    phi = gm.phi_map(alpha, variant, run.config.cutoff, h=h)
    bracket = gm.variant_bracket(variant, run.config.cutoff, h)
    verdict = gm.hom_check(phi, g, bracket)
    failed = {(x, y): d for x, y, d in verdict.residuals}
    for x in g.labels:
        for y in g.labels:
            d = failed.get((x, y))
            run.check(f"{tag} hom [{x}, {y}]", lambda d=d: (d is None, "" if d is None else str(d)))
    run.check(f"{tag} images independent", lambda: (verdict.rank == 17, f"rank {verdict.rank}"))
    return verdict


def _relation_checks(run, tag, variant, alpha, h=H):
    for x, y, res in gm.relations_check(variant, alpha, run.config.cutoff, h):
        run.check(f"{tag} relation [{x}, {y}]", lambda res=res: (res.is_zero(), "" if res.is_zero() else str(res)))


def _generation_check(run, tag, variant, alpha, h=H, exact=17):
    gens = gm.gamma_alpha_generators(alpha, variant, run.config.cutoff, h)
    bracket = gm.variant_bracket(variant, run.config.cutoff, h)

    def fn():
        dim = gm.generate_from_odd([gens[l] for l in gm.ODD_GENERATORS], bracket).dim
        ok = dim == exact if exact else dim <= 17
        return ok, f"dimension {dim}"

    run.check(f"{tag} generated by odd part", fn)


def suite_poisson_realization(run):
    a = run.alpha
    run.check("jacobi Gamma(2, -1-alpha, alpha-1)",
              lambda: (lambda v: (not v, f"{len(v)} violations"))(gm.jacobi_check(gm.gamma_alpha(a))))
    _hom_checks(run, "poisson", "poisson", a)
    _generation_check(run, "poisson", "poisson", a)
    _relation_checks(run, "poisson", "poisson", a)

    def mutation():
        gens = gm.gamma_alpha_generators(a, "poisson")
        gens["T3"] = gens["T3"].scale(-1)
        v = gm.hom_check(gm.phi_map(generators=gens), gm.gamma_alpha(a), gm.variant_bracket("poisson"))
        return bool(v.residuals), f"{len(v.residuals)} failing pairs"

    run.check("control: sign flip on T3 detected", mutation)
    for s in SAMPLE_ALPHAS:
        def sample(s=s):
            v = gm.hom_check(gm.phi_map(s), gm.gamma_alpha(s), gm.variant_bracket("poisson"))
            return v.passed, f"{len(v.residuals)} failing pairs, rank {v.rank}"

        run.check(f"poisson hom at alpha={s}", sample)
        _generation_check(run, f"poisson alpha={s}", "poisson", s, exact=None)


def suite_deformed_realization(run):
    a, h = run.alpha, run.h
    _hom_checks(run, "deformed", "deformed", a, h)
    gens = gm.gamma_alpha_generators(a, "deformed", run.config.cutoff, h)
    bracket = gm.variant_bracket("deformed", run.config.cutoff, h)
    open_pairs = gm.span_closure(gens, bracket)
    run.check("deformed closes in its span", lambda: (not open_pairs, ", ".join(map(str, open_pairs))))
    _generation_check(run, "deformed", "deformed", a, h)
    _relation_checks(run, "deformed", "deformed", a, h)
    limit = gm.contraction_limit_check(gm.gamma_alpha_generators(a, "deformed"),
                                       gm.gamma_alpha_generators(a, "poisson"))
    for label in GAMMA_LABELS:
        ok, diff = limit.per_label[label]
        run.check(f"h = 0 limit {label}", lambda ok=ok, diff=diff: (ok, "" if ok else str(diff)))


def suite_matrix_realization(run):
    a = run.alpha
    _hom_checks(run, "matrices", "matrices", a)
    _relation_checks(run, "matrices", "matrices", a)
    mats = gm.gamma_alpha_generators(a, "matrices")
    for label in GAMMA_LABELS:
        def fn(label=label):
            diff = mats[label] - gamma_from_embedding(label, a)
            return diff.is_zero(), "" if diff.is_zero() else str(diff)

        run.check(f"matrix {label} = embedding combination", fn)


def suite_psl(run):
    cases = [int(run.config.alpha)] if run.config.alpha in ("1", "-1") else [1, -1]
    for a in cases:
        v = gm.psl_check(a)
        run.check(f"alpha={a} span dimension 14", lambda v=v: (v.dim == 14, f"dimension {v.dim}"))
        run.check(f"alpha={a} span closed", lambda v=v: (v.closed, f"{v.open_pairs} open pairs"))
        run.check(f"alpha={a} center trivial", lambda v=v: (v.center_dim == 0, f"center dimension {v.center_dim}"))
        run.check(f"alpha={a} ideal", lambda v=v: (v.ideal, ""))
        run.check(f"alpha={a} quotient sl(2)", lambda v=v: (v.quotient_ok, f"kappa = {v.kappa}"))
        control = gm.psl_check(2, span_of=a)
        run.check(f"control: alpha=2 span of alpha={a} does not close",
                  lambda c=control: (not c.closed, f"{c.open_pairs} open pairs"))


def suite_pseudo_symbols(run):
    a, h = run.alpha, run.h
    _hom_checks(run, "pseudo_h", "pseudo_h", a, h)
    _hom_checks(run, "pseudo_limit", "pseudo_limit", a)
    _relation_checks(run, "pseudo_h", "pseudo_h", a, h)
    _limit_window_checks(run, a)
    d4 = gm.gamma_alpha_generators(a, "pseudo_limit")["D4"]
    run.notes.append(f"D4 at h = 0 (from the deformed element): {d4}")


def _limit_window_checks(run, a):
    v = gm.contraction_limit_check(gm.gamma_alpha_generators(a, "pseudo_h", run.config.cutoff),
                                   gm.gamma_alpha_generators(a, "pseudo_limit"))
    for label in GAMMA_LABELS:
        ok, diff = v.per_label[label]
        depth = v.depth.get(label)
        if depth is None:
            run.check(f"pseudo limit {label}", lambda ok=ok, diff=diff: (ok, "" if ok else str(diff)))
        else:
            run.check(f"pseudo limit {label} (window {depth})",
                      lambda ok=ok, diff=diff, depth=depth: (ok and depth >= LIMIT_WINDOW,
                                                             f"depth {depth}" if ok else str(diff)))


# -- contact / K'(4) suites -------------------------------------------------------------------


def suite_k4_closure(run):
    fam = k4_family()
    modes = run.modes()
    for a in K4_LABELS:
        for b in K4_LABELS:
            def fn(a=a, b=b):
                count = 0
                for n in modes:
                    for k in modes:
                        if a in fam.labels_at(n) and b in fam.labels_at(k):
                            fam.bracket(a, n, b, k)
                            count += 1
                return True, f"{count} brackets"

            run.check(f"closure [{a}, {b}]", _guard(fn, ClosureFailure))


def _guard(fn, exc):
    def inner():
        try:
            return fn()
        except exc as e:
            return False, str(e)

    return inner


def suite_cocycles(run):
    r = run.config.range
    for name, table, fam in (("S'(2,0)", virasoro_table(), s2_family()), ("K'(4)", k4_table(), k4_family())):
        v = cocycle_verify(table, fam, r)
        run.check(f"cocycle {name}", lambda v=v: (not v, f"{len(v)} violations" + (f", first {v[0]}" if v else "")))
    for name, table, fam in (("S'(2,0)", virasoro_table(True), s2_family()), ("K'(4)", k4_table(True), k4_family())):
        v = cocycle_verify(table, fam, r)
        run.check(f"control: perturbed {name} fails", lambda v=v: (bool(v), f"{len(v)} violations"))


def suite_matrix_embed_I(run):
    fam = k4_family()
    table = k4_table()
    modes = list(run.modes())
    one = WeylSuperMatrix.identity()
    for a in K4_LABELS:
        for b in K4_LABELS:
            def fn(a=a, b=b):
                for n in modes:
                    for k in modes:
                        lhs = supermatrix_bracket(embed_I(a, n), embed_I(b, k))
                        if a in fam.labels_at(n) and b in fam.labels_at(k):
                            rhs = one.scale(table.value(a, n, b, k))
                            for lab, c in fam.bracket(a, n, b, k).items():
                                rhs = rhs + embed_I(lab, n + k).scale(c)
                        else:
                            rhs = WeylSuperMatrix()
                        diff = lhs - rhs
                        if not diff.is_zero():
                            return False, f"modes ({n}, {k}): {diff}"
                return True, ""

            run.check(f"I[{a}, {b}]", fn)
    run.check("I(G3[0]) is the identity", lambda: (embed_I("G3", 0) == one, ""))


def suite_dictionary_IJ(run):
    for label in K4_LABELS:
        for emb, ref in (("i", embed_I), ("j", embed_J)):
            def fn(label=label, emb=emb, ref=ref):
                for n in run.modes():
                    diff = derived_matrix(label, n, emb) - ref(label, n)
                    if not diff.is_zero():
                        return False, f"mode {n}: {diff}"
                return True, ""

            run.check(f"{emb.upper()}({label}) from the field action", fn)


def suite_rep_consistency(run):
    window = range(-4, 5)
    for label in K4_LABELS:
        def windowed(label=label):
            for n in run.modes():
                M = embed_I(label, n)
                for s in BASIS_ORDER:
                    for m in window:
                        got = rep_action(label, n, VVector.basis(s, m))
                        want = VVector({(t, m + shift): c for (t, shift), c in matrix_action(M, s, m).items()})
                        if got != want:
                            return False, f"mode {n}, v{s}[{m}]: {got} vs {want}"
            return True, ""

        def symbolic(label=label):
            for n in run.modes():
                for s in BASIS_ORDER:
                    got = action_table(label, n, s, M_INDEX, run.mu)
                    want = field_action(label, n, s, M_INDEX + run.mu)
                    keys = set(got) | set(want)
                    if any(got.get(k, ZERO) != want.get(k, ZERO) for k in keys):
                        return False, f"mode {n}, v{s}: {got} vs {want}"
            return True, ""

        run.check(f"{label} action = matrix, m in [-4, 4]", windowed)
        run.check(f"{label} action = field operator, symbolic m", symbolic)


# -- contraction ----------------------------------------------------------------------------------


def _random_symbol(rng, parity):
    out = PSymbol.zero()
    for _ in range(rng.randint(1, 3)):
        mask = rng.choice([m for m in range(16) if bin(m).count("1") % 2 == parity])
        word = [name for i, name in enumerate(("x1", "x2", "y1", "y2")) if mask >> i & 1]
        out = out + PSymbol.term(rng.randint(-3, 3) or 1, t=rng.randint(-2, 3), tau=rng.randint(-1, 2), odd=" ".join(word))
    return out


def suite_contraction(run):
    cutoff = run.config.cutoff
    gens = gm.gamma_alpha_generators(run.alpha, "poisson")
    for a in GAMMA_LABELS:
        def fn(a=a):
            bad = [b for b in GAMMA_LABELS if not contraction_first_order(gens[a], gens[b], cutoff)]
            return not bad, ", ".join(bad)

        run.check(f"first order [{a}, *] poisson generators", fn)
    fam = k4_family()
    for a in K4_LABELS:
        def fn(a=a):
            for n in run.modes():
                if a not in fam.labels_at(n):
                    continue
                for b in K4_LABELS:
                    for k in run.modes():
                        if b not in fam.labels_at(k):
                            continue
                        v = contraction_first_order(k4_basis(a, n), k4_basis(b, k), cutoff)
                        if not v:
                            return False, f"{a}[{n}], {b}[{k}]: {v.residual}"
            return True, ""

        run.check(f"first order [{a}, *] K'(4) fields", fn)
    rng = random.Random(run.config.seed)
    for i in range(20):
        A = _random_symbol(rng, rng.randint(0, 1))
        B = _random_symbol(rng, rng.randint(0, 1))

        def fn(A=A, B=B):
            v = contraction_first_order(A, B, cutoff)
            return v.passed, "" if v.passed else f"{A} , {B}: {v.residual}"

        run.check(f"first order random pair {i}", fn)
    _limit_window_checks(run, run.alpha)


SUITES = {
    "gamma-thm41": suite_poisson_realization,
    "gamma-thm52": suite_deformed_realization,
    "gamma-thm63": suite_matrix_realization,
    "k4-closure": suite_k4_closure,
    "cocycles": suite_cocycles,
    "matrix-embed-I": suite_matrix_embed_I,
    "dictionary-IJ": suite_dictionary_IJ,
    "rep-consistency": suite_rep_consistency,
    "contraction": suite_contraction,
    "psl": suite_psl,
    "remark64": suite_pseudo_symbols,
}


def run_suite(config):
    if config.suite not in SUITES:
        raise UnknownSuite(config.suite)
    run = _Run(config)
    SUITES[config.suite](run)
    return Report(config.suite, config.echo(), run.checks, run.notes)
