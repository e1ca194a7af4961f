"""Whole-pair analysis reports and the named verification suites behind the CLI.

Every report separates ``checks`` (identities that must hold; a failure is
a violation) from ``verdicts`` (convention-sensitive claims, recorded only).
Dictionaries are built in a fixed key order so that serialized output is
byte-stable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import contragredient as cg
from . import diffop
from .errors import PreconditionError
from .exact import Mat
from .hybrid import (
    centralizer_hybrid,
    compatibility_violation,
    double_kv,
    hybrid_from_pair,
    morphism_verify,
    triviality_report,
    verify_hybrid,
    verify_lie,
)
from .isotopic import MatrixPair, compute_annihilator, compute_normalizer, classify_a0, substructure_check, verify_pair_axioms
from .pseudo_orbit import (
    _random_point,
    conservation_and_coadjoint_check,
    decomposition_check,
    leaf_preservation_check,
    parallel_transport_residual,
    random_annihilator_element,
    variation_commutator_report,
    verify_connection,
    verify_decomposition,
    verify_pseudoalgebra,
    verify_pseudohybrid_compat,
)
from .report import CheckReport, jsonable
from .rng import DEFAULT_RANGE, substream

SCHEMA = "opair-1"
SUITES = ("pair_axioms", "hybrid", "contragredience", "kernel", "kirillov", "pseudo", "decomposition", "connection", "diffop")


def _tensor_json(c):
    return [[[str(v) for v in row] for row in plane] for plane in c]


@lru_cache(maxsize=None)
def r_squared_verdicts(n: int) -> dict | None:
    if n < 2:
        return None
    out = {}
    for conv in cg.PairingConvention:
        R1, _ = cg.build_R(n, conv)
        d = cg.analyze_R(R1).details
        out[conv.value] = {"squared_is_minus_identity": d["squared_is_minus_identity"], "squared_scalar": d["squared_scalar"]}
    return out


def analyze_pair(p: MatrixPair, seed: int = 0, samples: int = 5) -> dict:
    """Everything the modules can say about one pair, as an ordered JSON-ready dict."""
    n = p.n
    checks: dict[str, CheckReport] = {}
    verdicts: dict[str, object] = {}

    ann, nor = compute_annihilator(p), compute_normalizer(p)
    a, a0 = ann.dim, nor.dim - ann.dim
    checks["substructure"] = substructure_check(p)
    classification = classify_a0(a0)

    h = hybrid_from_pair(p)
    trivial, proportional = triviality_report(h)
    checks["hybrid_axioms"] = verify_hybrid(h, seed)
    checks["double_jacobi"] = verify_lie(double_kv(h).c, "double_jacobi")

    omega_rep = cg.omega_kernel_crosscheck(p)
    checks["omega_kernel"] = omega_rep

    dec = decomposition_check(p)

    try:
        morph = morphism_verify(p)
    except PreconditionError:
        morph = None
    if morph is not None:
        if morph.kind == "check":
            checks["morphism"] = morph
        else:
            verdicts["morphism_singular_a"] = {
                b: {"surjective": morph.details[b]["surjective"], "contained": morph.details[b]["contained"]}
                for b in ("right", "left") if b in morph.details
            }
    if p.A.is_invertible():
        checks["kirillov"] = cg.kirillov_crosscheck(p, samples, seed)

    leaf = CheckReport("leaf_preservation")
    for X in ann.basis_mats():
        leaf.merge(leaf_preservation_check(p, X))
    checks["leaf_preservation"] = leaf

    cons = CheckReport("conservation_coadjoint")
    transport = CheckReport("parallel_transport")
    for idx in range(samples):
        g = substream(seed, idx)
        lam, mu = g.nonzero_rational(), g.rational()
        cons.merge(conservation_and_coadjoint_check(p, lam, mu, g.matrix(n), coadjoint=idx == 0))
        Z1, Z2 = g.matrix(n), g.matrix(n)
        Z0, X = random_annihilator_element(g, p), random_annihilator_element(g, p)
        transport.record(parallel_transport_residual(p, Z1, Z2, Z0, X).is_zero(), sample=idx)
    checks["conservation_coadjoint"] = cons
    checks["parallel_transport"] = transport

    verdicts["r_squared_per_convention"] = r_squared_verdicts(n)
    basis = ann.basis_mats()
    if len(basis) >= 2:
        vc = variation_commutator_report(p, basis[0], basis[1])
        verdicts["variation_commutativity"] = vc.passed
    else:
        verdicts["variation_commutativity"] = None

    return {
        "schema": SCHEMA,
        "n": n,
        "A": p.A.to_json(),
        "B": p.B.to_json(),
        "a": a,
        "a0": a0,
        "classification": classification.value,
        "ac_basis": [X.to_json() for X in basis],
        "ab_basis": [X.to_json() for X in nor.basis_mats()],
        "hybrid": {
            "c_prime": _tensor_json(h.c_prime),
            "c_double_prime": _tensor_json(h.c_double_prime),
            "trivial": trivial,
            "proportional": proportional,
            "compatible": compatibility_violation(h.c_prime, h.c_double_prime) is None,
        },
        "omega": {"kernel_matches_ac": omega_rep.details["kernel_dim"] == a and omega_rep.passed, "codim": omega_rep.details["codim"]},
        "decomposition": {"dims": dec.dims, "direct": dec.direct, "equals_gl2": dec.equal},
        "verdicts": jsonable(verdicts),
        "checks": {k: "pass" if v.passed else "fail" for k, v in checks.items()},
    }


def analysis_passed(report: dict) -> bool:
    return all(v == "pass" for v in report["checks"].values())


# ----- suites ---------------------------------------------------------------


def _pairs(n: int, samples: int, seed: int, r: int = DEFAULT_RANGE):
    for idx in range(samples):
        g = substream(seed, idx)
        yield idx, g, MatrixPair(g.matrix(n, r), g.matrix(n, r))


def suite_pair_axioms(n: int, samples: int, seed: int) -> list[CheckReport]:
    return [verify_pair_axioms(n, samples, seed)]


def suite_hybrid(n: int, samples: int, seed: int) -> list[CheckReport]:
    axioms = CheckReport("hybrid_axioms", details={"n": n, "pairs": samples, "centralizers": samples})
    dbl = CheckReport("double_jacobi", details={"n": n})
    morph = CheckReport("morphism_invertible_a", details={"n": n})
    for idx, g, p in _pairs(n, samples, seed):
        h = hybrid_from_pair(p)
        axioms.merge(verify_hybrid(h, seed + idx))
        dbl.merge(verify_lie(double_kv(h).c))
        if p.A.is_invertible():
            morph.merge(morphism_verify(p))
        hc = centralizer_hybrid(g.matrix(n))
        axioms.merge(verify_hybrid(hc, seed + idx))
        dbl.merge(verify_lie(double_kv(hc).c))
    return [axioms, dbl, morph]


def suite_contragredience(n: int, samples: int, seed: int) -> list[CheckReport]:
    reps = [cg.verify_contragredience(n, samples, seed)]
    if n >= 2:
        for conv in cg.PairingConvention:
            R1, R2 = cg.build_R(n, conv)
            adj = cg.adjointness_check(R1, R2, n)
            adj.name = f"r_adjoint_{conv.value}"
            reps.append(adj)
            dfn = cg.r_defining_check(R1, R2, n, min(samples, 20), seed)
            dfn.name = f"r_defining_{conv.value}"
            reps.append(dfn)
            sq = cg.analyze_R(R1)
            sq.name = f"r_squared_{conv.value}"
            reps.append(sq)
        if n == 2:
            inst = CheckReport("r_determinant_counter_instance", kind="verdict")
            inst.record(not cg.determinant_counter_instance())
            inst.details["R1_fixes_E11_E12_with_sign_minus_one"] = cg.determinant_counter_instance()
            reps.append(inst)
    return reps


def suite_kernel(n: int, samples: int, seed: int) -> list[CheckReport]:
    rep = CheckReport("omega_kernel", details={"n": n, "samples": samples, "seed": seed})
    for idx, _, p in _pairs(n, samples, seed):
        rep.merge(cg.omega_kernel_crosscheck(p))
    return [rep]


def suite_kirillov(n: int, samples: int, seed: int) -> list[CheckReport]:
    rep = CheckReport("kirillov", details={"n": n, "samples": samples, "seed": seed, "sign": cg.KIRILLOV_SIGN})
    for idx in range(samples):
        g = substream(seed, idx)
        p = MatrixPair(g.invertible_matrix(n), g.matrix(n))
        rep.merge(cg.kirillov_crosscheck(p, 1, seed + idx))
    return [rep]


def suite_pseudo(n: int, samples: int, seed: int) -> list[CheckReport]:
    cons = CheckReport("conservation_coadjoint", details={"n": n, "samples": samples, "seed": seed})
    for idx in range(samples):
        g = substream(seed, idx)
        p = _random_point(g, n, DEFAULT_RANGE)
        cons.merge(conservation_and_coadjoint_check(p, g.nonzero_rational(), g.rational(), g.matrix(n)))
    return [verify_pseudoalgebra(n, samples, seed), verify_pseudohybrid_compat(n, samples, seed), cons]


def suite_decomposition(n: int, samples: int, seed: int) -> list[CheckReport]:
    rep = verify_decomposition(n, samples, seed, invertible=True)
    # unrestricted points, singular ones included, reported as data only
    free = verify_decomposition(n, min(samples, 20), seed, invertible=False)
    free.name, free.kind = "decomposition_unrestricted", "verdict"
    var = CheckReport("variation_commutativity", kind="verdict", details={"n": n})
    for idx in range(min(samples, 10)):
        g = substream(seed, idx)
        p = _random_point(g, n, DEFAULT_RANGE, invertible=True)
        basis = compute_annihilator(p).basis_mats()
        if len(basis) >= 2:
            var.merge(variation_commutator_report(p, basis[0], basis[1]))
    return [rep, free, var]


def suite_connection(n: int, samples: int, seed: int) -> list[CheckReport]:
    return [verify_connection(n, samples, seed)]


def diffop_reports(max_index: int = 8, degree: int = 24, table_max: int = 6) -> list[CheckReport]:
    coeffs = CheckReport("basis_coefficients", details={"max_index": max_index, "degree": degree})
    member = CheckReport("membership", details={"max_index": max_index, "degree": degree})
    for n in range(max_index + 1):
        e = diffop.basis_element(n, degree)
        for j in range(degree + 1):
            for i in range(degree + 1):
                expected = diffop.f_coefficient(n, j) if i == j + n else Fraction(0)
                coeffs.record(e.action[i][j] == expected, n=n, row=i, column=j)
        member.merge(diffop.membership_check(e))
    kernel = CheckReport("pde_kernel", details={"degree": 10})
    dim = diffop.pde_kernel_dimension(10)
    kernel.record(dim == 0, kernel_dim=dim)
    kernel.details["kernel_dim"] = dim
    table = diffop.commutation_table(table_max, max(2 * table_max + 2, degree))
    return [coeffs, member, kernel, table.report, table.verdict]


def suite_diffop(n: int, samples: int, seed: int) -> list[CheckReport]:
    return diffop_reports()


SUITE_FUNCTIONS = {
    "pair_axioms": suite_pair_axioms,
    "hybrid": suite_hybrid,
    "contragredience": suite_contragredience,
    "kernel": suite_kernel,
    "kirillov": suite_kirillov,
    "pseudo": suite_pseudo,
    "decomposition": suite_decomposition,
    "connection": suite_connection,
    "diffop": suite_diffop,
}


def run_suite(name: str, ns: list[int], samples: int, seed: int) -> dict:
    """Run one suite over every n (diffop ignores n) and summarize hard checks and verdicts."""
    fn = SUITE_FUNCTIONS[name]
    if name == "diffop":
        reports = [("all", r) for r in fn(0, samples, seed)]
    else:
        reports = [(n, r) for n in ns for r in fn(n, samples, seed)]
    hard = [r for _, r in reports if r.kind == "check"]
    return {
        "passed": all(r.passed for r in hard),
        "checked": sum(r.checked for r in hard),
        "failures": sum(r.failures for r in hard),
        "reports": [{"n": n, **r.to_json()} for n, r in reports],
    }
