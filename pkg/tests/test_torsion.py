from fractions import Fraction

import numpy as np
import pytest

from twistalex.algebra import CC, GF, QQ, ZZ, LaurentPoly, TorsionClass
from twistalex.knots import GroupPresentation, braid_presentation, parse_braid, torus_presentation, unknot_presentation
from twistalex.representations import Representation, rep_search_sl2_fp
from twistalex.table import load_bundled_table
from twistalex.torsion import (
    Fiberedness,
    NoValidColumn,
    alexander_polynomial,
    alexander_torsion,
    fibered_check,
    genus_bound,
    is_special_linear,
    twisted_torsion,
    twisted_torsion_numeric,
)

T = LaurentPoly.parse
TABLE = {rec.name: rec for rec in load_bundled_table()}


def braid(text):
    return braid_presentation(parse_braid(text))


TREFOIL, FIG8, FIVE2 = braid("1 1 1"), braid("1 -2 1 -2"), TABLE["5_2"].presentation()


class TestClassical:
    def test_torus_formula(self):
        # (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1))
        t = LaurentPoly.monomial
        num = (t(6, 1, ZZ) - LaurentPoly.one()) * T("t - 1")
        den = (t(2, 1, ZZ) - LaurentPoly.one()) * (t(3, 1, ZZ) - LaurentPoly.one())
        assert alexander_polynomial(torus_presentation(2, 3)) == num.exact_div(den)

    def test_figure_eight_seifert(self):
        # det(V - t V^T) for V = [[1, 1], [0, -1]]
        V = [[1, 1], [0, -1]]
        m = [[LaurentPoly([V[i][j], -V[j][i]], 0, ZZ) for j in range(2)] for i in range(2)]
        seifert = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert alexander_polynomial(FIG8) == seifert or alexander_polynomial(FIG8) == -seifert

    def test_five_two(self):
        assert alexander_polynomial(FIVE2) == T("2 - 3*t + 2*t^2")

    def test_delta_at_one(self):
        for rec in TABLE.values():
            assert alexander_polynomial(rec.presentation())(1) == 1

    def test_torsion_examples(self):
        assert alexander_torsion(unknot_presentation()).degree() == -1
        tau = alexander_torsion(TREFOIL)
        assert tau.degree() == 1 and tau.is_monic()
        tau = alexander_torsion(FIG8)
        assert tau == TorsionClass(T("1 - 3*t + t^2"), T("1 - t"))
        assert tau.degree() == 1 and tau.is_monic()

    def test_parity(self):
        for rec in TABLE.values():
            assert alexander_torsion(rec.presentation()).degree() % 2 == 1


class TestGenusBound:
    def test_examples(self):
        assert genus_bound(alexander_torsion(TREFOIL)) == 1
        assert genus_bound(alexander_torsion(unknot_presentation())) == 0
        assert genus_bound(alexander_torsion(torus_presentation(3, 7))) == 6

    def test_twisted(self):
        tau = TorsionClass(T("1 + t^4"), T("1 - t"))
        assert genus_bound(tau, k=2) == Fraction(5, 4)

    def test_zero(self):
        with pytest.raises(ValueError):
            genus_bound(TorsionClass(LaurentPoly.zero(), LaurentPoly.one()))


class TestTwisted:
    def test_trivial_twist_reduces_to_classical(self):
        for rec in TABLE.values():
            P = rec.presentation()
            rep = Representation.trivial(P, 1, QQ)
            assert twisted_torsion(P, rep) == alexander_torsion(P)

    def test_trivial_twist_over_prime_field(self):
        P = FIG8
        tau = twisted_torsion(P, Representation.trivial(P, 1, GF(7)))
        assert tau.degree() == 1

    @pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "7_4"])
    def test_column_independence(self, name):
        P = TABLE[name].presentation()
        for rep in rep_search_sl2_fp(P, 5, 6) + rep_search_sl2_fp(P, 7, 6):
            vals = []
            for j in range(P.n):
                try:
                    vals.append(twisted_torsion(P, rep, column=j))
                except NoValidColumn:
                    pass
            assert len(vals) >= 2
            assert all(v == vals[0] for v in vals)

    def test_trefoil_f5_degree_bound(self):
        reps = rep_search_sl2_fp(TREFOIL, 5, 50)
        assert reps
        for rep in reps:
            tau = twisted_torsion(TREFOIL, rep)
            assert not tau.is_zero()
            assert tau.degree() <= 2 * (2 * 1 - 1)
            assert tau.degree() % 2 == 0

    def test_non_acyclic_gives_zero(self):
        # < a, b | b^2 > with b -> -1: d(b^2)/db = 1 + b vanishes
        P = GroupPresentation(("a", "b"), ((2, 2),), (1, 0))
        rep = Representation(["a", "b"], [[[1]], [[-1]]], QQ)
        tau = twisted_torsion(P, rep)
        assert tau.is_zero()
        assert tau.degree() < -(10**9)

    def test_no_valid_column_is_not_zero(self):
        P = GroupPresentation(("a", "b"), ((2, 2),), (1, 0))
        rep = Representation(["a", "b"], [[[1]], [[1]]], QQ)
        with pytest.raises(NoValidColumn):
            twisted_torsion(P, rep, column=1)

    def test_rep_file_degrees(self):
        for name, expected in (("3_1", 2), ("4_1", 2)):
            rec = TABLE[name]
            for rep in rec.load_representations():
                if rep.ring.exact:
                    P = next(P for _, P in rec.all_presentations() if set(rep.generators) <= set(P.generators) and len(rep.generators) == P.n)
                    tau = twisted_torsion(P, rep)
                    assert tau.degree() == expected


class TestNumeric:
    def test_unknot_trivial_two_dim(self):
        P = unknot_presentation()
        rep = Representation.trivial(P, 2, CC)
        res = twisted_torsion_numeric(P, rep)
        assert res.degree == 2 * alexander_torsion(P).degree()
        assert res.monic

    def test_classical_reproduced(self):
        for P in (TREFOIL, FIG8, FIVE2, torus_presentation(3, 4)):
            res = twisted_torsion_numeric(P, Representation.trivial(P, 1, CC))
            tau = alexander_torsion(P)
            assert res.degree == tau.degree()
            assert res.monic == tau.is_monic()

    def test_exact_vs_numeric_f_rational(self):
        rec = TABLE["4_1"]
        rep = next(r for r in rec.load_representations() if r.ring.exact)
        P = rec.presentation("braid")
        tau = twisted_torsion(P, rep)
        res = twisted_torsion_numeric(P, rep.to_complex())
        assert res.degree == tau.degree()
        assert res.monic == tau.is_monic()

    def test_holonomy_figure_eight(self):
        rep = next(r for r in TABLE["4_1"].load_representations() if not r.ring.exact)
        res = twisted_torsion_numeric(TABLE["4_1"].presentation("braid"), rep)
        assert res.degree == 2 and res.monic
        assert res.report["condition"] is not None

    def test_sample_count_raised_to_span(self):
        P = torus_presentation(3, 7)
        res = twisted_torsion_numeric(P, Representation.trivial(P, 1, CC), samples=4)
        assert res.report["samples"] > res.report["span_bound"]
        assert res.degree == 11


class TestFibered:
    def test_trefoil(self):
        v = fibered_check(TREFOIL, known_genus=1)
        assert v.status is Fiberedness.CONSISTENT

    def test_five_two(self):
        v = fibered_check(FIVE2, known_genus=1)
        assert v.status is Fiberedness.CERTIFIED_NON_FIBERED
        assert v.witness is not None

    def test_unknot(self):
        assert fibered_check(unknot_presentation(), known_genus=0).status is Fiberedness.CONSISTENT

    def test_unknown_genus_is_inconclusive(self):
        assert fibered_check(TREFOIL).status is Fiberedness.INCONCLUSIVE

    def test_twisted_reps_respected(self):
        reps = rep_search_sl2_fp(FIG8, 5, 10)
        assert fibered_check(FIG8, known_genus=1, reps=reps).status is Fiberedness.CONSISTENT

    def test_table_fibered_knots_pass(self):
        for rec in TABLE.values():
            if rec.fibered and rec.genus is not None:
                P = rec.presentation()
                reps = [r for r in rep_search_sl2_fp(P, 3, 4)] if P.n <= 6 else []
                assert fibered_check(P, rec.genus, reps).status is Fiberedness.CONSISTENT, rec.name

    def test_special_linear_detection(self):
        rep = Representation(["a"], [[[0, -1], [1, 0]]], QQ)
        assert is_special_linear(rep)
        assert not is_special_linear(Representation(["a"], [[[2, 0], [0, 1]]], QQ))
        assert is_special_linear(Representation(["a"], [np.eye(2) * 1j @ np.array([[0, 1], [-1, 0]]) * -1j], CC))
