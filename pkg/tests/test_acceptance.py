"""Acceptance suite: every guaranteed identity at its contractual size.

Each criterion resolves to registered checks run at pinned parameters and
decided by exact rational arithmetic (no tolerances anywhere).  One
PASS/FAIL line is printed per criterion; run with ``pytest -s`` to see them
as they complete.
"""
import pytest

from flexion import CheckSpec, run_check

# criterion id -> (summary, [(check name, spec overrides)])
CRITERIA = {
    1: (
        "sharped bracket lift equals the inverse-dilator expansion "
        "for x1^2 and x1^4, lengths <= 4, exact",
        [("brown-lift-transport", {"max_length": 4})],
    ),
    2: (
        "lifted elements satisfy sharp-shuffle and harmonic vanishing "
        "up to length 4 (both parity readings reported)",
        [("brown-lift-double-shuffle", {"max_length": 4})],
    ),
    3: (
        "left series, right series (inverse dilator), and the exponential "
        "adjoint agree on 5 seeded exponents x 3 operands, lengths <= 4",
        [("adari-dilator-threeway", {"max_length": 4, "trials": 5})],
    ),
    4: (
        "length-scaling is a derivation for mu and the flexion actions; "
        "its commutators with both series and the exponential adjoint",
        [
            ("der-derivation-mu", {"max_length": 4}),
            ("der-derivation-flexion", {"max_length": 4}),
            ("dilator-series-der-intertwine", {"max_length": 4}),
            ("exp-ad-der-intertwine", {"max_length": 4}),
        ],
    ),
    5: (
        "action expansion, bracket conjugation, both swap-conjugation "
        "identities, the push factorisation, and the flat transport "
        "on reversal-fixed samples, lengths <= 4",
        [
            ("ihara-action-flexion-expansion", {"max_length": 4}),
            ("ihara-bracket-anti-ila", {"max_length": 4}),
            ("amit-swap-conjugation", {"max_length": 4}),
            ("anit-swap-push", {"max_length": 4}),
            ("push-factorization", {"max_length": 4}),
            ("mantar-bracket-transport", {"max_length": 4}),
        ],
    ),
    6: (
        "closed flexion sum equals half the reversed polar generator "
        "(lengths <= 4); push orbit sums of the geometric bimould vanish "
        "(lengths <= 5)",
        [
            ("darapir-closed-form", {"max_length": 4}),
            ("pic-push-neutrality", {"max_length": 5}),
        ],
    ),
    7: (
        "polar generator satisfies the double shuffle conditions up to "
        "length 4; the hand-computed length-2 instance vanishes; the "
        "literal contraction fails it with witness 1/(x1*x2)",
        [("psi0-double-shuffle", {"max_length": 4})],
    ),
    8: (
        "Witt law of the de-normalised generators for all indices <= 4, "
        "exact in both bracket orientations",
        [("witt-bracket", {"max_length": 4})],
    ),
    9: (
        "structural layer: bracket antisymmetry and Jacobi, mu unit and "
        "associativity, mu- and dilator-inversion round trips, the "
        "sharp/flat inverse pair, reversal-fixed sharps of shuffle samples",
        [
            ("ari-antisymmetry", {"max_length": 4}),
            ("ari-jacobi", {"max_length": 3}),
            ("mu-associativity-unit", {"max_length": 4}),
            ("invmu-roundtrip", {"max_length": 4}),
            ("dilator-roundtrip", {"max_length": 4}),
            ("sharp-flat-inverse", {"max_length": 4}),
            ("ls-sharp-mantar-invariant", {"max_length": 4}),
        ],
    ),
    10: (
        "negative controls: odd cube fails parity, x1*x2 fails the shuffle "
        "condition with witness 2*x1*x2, the literal contraction is "
        "noncommutative at single letters",
        [
            ("negative-odd-parity", {}),
            ("negative-shuffle-witness", {}),
            ("harmonic-literal-noncommutative", {}),
        ],
    ),
}


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_acceptance_criterion(criterion):
    summary, checks = CRITERIA[criterion]
    failures = []
    for name, overrides in checks:
        report = run_check(CheckSpec(name=name, **overrides))
        if not report.passed:
            first = report.failures[0]
            failures.append(f"{name}: {first.where}"
                            + (f" delta={first.delta}" if first.delta else ""))
    state = "PASS" if not failures else "FAIL"
    print(f"ACCEPTANCE {criterion:2d} {state}: {summary}")
    assert not failures, failures
