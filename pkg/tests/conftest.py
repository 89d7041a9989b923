"""Shared corpus of analyzed germs.

The corpus spans the behaviors the theorems distinguish: stable germs, the
singular S_k family, strongly contractible germs (hand-written, generated,
and degenerate), unstable germs with nontrivial image homology, and one germ
that fails A-finiteness.  Analyses are computed once per session.
"""

from __future__ import annotations

import pytest

from germlab import multipoint as mp


CORPUS_SPECS = {
    # stable
    "crosscap": (2, 3, ["y^2", "x1*y"]),
    "immersion": (2, 3, ["y", "y^2"]),
    "stable_3_5": (3, 5, ["y^3+x1*y", "y^4+x2*y", "x2*y+y^2"]),
    # singular S_k family (x, y^2, y^3 + x^{k+1} y)
    "s1": (2, 3, ["y^2", "y^3+x1^2*y"]),
    "s2": (2, 3, ["y^2", "y^3+x1^3*y"]),
    "s3": (2, 3, ["y^2", "y^3+x1^4*y"]),
    "s4": (2, 3, ["y^2", "y^3+x1^5*y"]),
    # strongly contractible, hand-written (the C^5 -> C^8 example)
    "contractible_5_8": (
        5,
        8,
        ["y^3+x1*y", "y^4+x2*y", "y^5+x3*y", "x4*y+x1*y^2"],
    ),
    # unstable, not strongly contractible
    "squared_4_6": (4, 6, ["y^3+x1^2*y", "y^4+x2*y", "y^5+x3*y"]),
    "triple_4_6": (4, 6, ["y^3+x1*y", "y^4+x2*y", "y^5+x3*y"]),
    "fold_2_4": (2, 4, ["y^2", "y^3", "x1*y"]),
    # degenerate (p > 2n), strongly contractible
    "degenerate_2_5": (2, 5, ["y^2", "y^3", "x1*y", "y^4"]),
}

# D^2 is a surface singular along a line, so the Marar-Mond test fails.
NOT_A_FINITE_SPEC = (3, 4, ["y^3", "x1*y"])


@pytest.fixture(scope="session")
def corpus():
    out = {}
    for name, (n, p, comps) in CORPUS_SPECS.items():
        out[name] = mp.analyze_germ(mp.germ(n, p, comps))
    for n, p in [(6, 10), (7, 11)]:
        g = mp.generate_sc_germ(n, p, self_check=False)
        out[f"generated_{n}_{p}"] = mp.analyze_germ(g)
    return out


@pytest.fixture(scope="session")
def not_a_finite_analysis():
    n, p, comps = NOT_A_FINITE_SPEC
    return mp.analyze_germ(mp.germ(n, p, comps))
