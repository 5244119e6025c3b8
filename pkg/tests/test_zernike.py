import itertools
import math

import numpy as np
import pytest

from conftest import (
    azimuthal_oracle,
    disk_points,
    disk_quadrature,
    gauss_unit,
    noll_closed_form,
    noll_enumeration,
    radial_oracle,
    valid_pairs,
    zernike_oracle,
)
from zernikecirc.errors import ParameterError, ParseError
from zernikecirc.geometry import PointDisk
from zernikecirc.polynomials import Monomial2, Polynomial2
from zernikecirc.zernike import (
    AzimuthalSum,
    AzimuthalTerm,
    RadialPoly,
    ZernikeExpansion,
    ZernikeTerm,
    azimuthal_eval,
    azimuthal_product,
    expansion_eval,
    expansion_product,
    format_expansion,
    g_coefficient,
    noll_index,
    noll_inverse,
    parse_expansion,
    polynomial_to_zernike,
    radial_build,
    radial_eval,
    zernike_eval,
    zernike_to_polynomial,
)

SQRT_PI = math.sqrt(math.pi)

# (Z_1^1)^2 projected on Z_0^0, Z_2^0, Z_2^2 by 20x128-node disk quadrature;
# the closed forms are 1/sqrt(pi), 1/sqrt(3 pi), sqrt(6)/(3 sqrt(pi)).
Z11_SQUARED = {(0, 0): 0.564189583547757, (2, 0): 0.3257350079352813, (2, 2): 0.4606588659617814}


class TestRadial:
    def test_constant(self):
        assert radial_build(0, 0).body.as_dict() == {0: pytest.approx(1.4142136, abs=1e-7)}

    def test_tilt(self):
        assert radial_build(1, 1).body.as_dict() == {1: 2.0}

    def test_defocus(self):
        r = radial_build(2, 0)
        assert r.at(0.0) == pytest.approx(-2.4494897, abs=1e-7)
        np.testing.assert_allclose(
            [r.body.coeff(0), r.body.coeff(2)], [-math.sqrt(6), 2 * math.sqrt(6)], rtol=1e-15
        )

    def test_eval_examples(self):
        assert radial_eval(radial_build(1, 1), 0.5) == pytest.approx(1.0, abs=1e-15)
        assert radial_eval(radial_build(2, 0), 1.0) == pytest.approx(2.4494897, abs=1e-7)
        for r in (0.0, 0.3, 1.0):
            assert radial_eval(radial_build(0, 0), r) == pytest.approx(1.4142136, abs=1e-7)

    def test_sign_of_m_is_ignored(self):
        assert radial_build(5, -3).body == radial_build(5, 3).body

    @pytest.mark.parametrize("n, m", [(2, 1), (1, 3), (-2, 0), (3, -5)])
    def test_invalid_rejected(self, n, m):
        with pytest.raises(ParameterError):
            radial_build(n, m)

    def test_only_two_dimensions(self):
        with pytest.raises(ParameterError):
            RadialPoly(2, 0, dim=3)
        with pytest.raises(ParameterError):
            radial_build(2, 0, dim=4)
        with pytest.raises(ParameterError):
            g_coefficient(0, 0, 1, 1, 1, 1, dim=3)

    @pytest.mark.parametrize("n, m", valid_pairs(16))
    def test_structure_and_value_at_rim(self, n, m):
        body = radial_build(n, m).body
        exps = sorted(body.as_dict())
        assert exps[0] == abs(m)
        assert exps[-1] == n
        assert all((e - n) % 2 == 0 for e in exps)
        assert body.at(1.0) == pytest.approx(math.sqrt(2 * n + 2), abs=1e-10)

    @pytest.mark.parametrize("n, m", valid_pairs(12))
    def test_matches_factorial_formula(self, n, m):
        r = np.linspace(0, 1, 33)
        np.testing.assert_allclose(radial_build(n, m).at(r), radial_oracle(n, m, r), atol=1e-11)

    @pytest.mark.parametrize("n, m", valid_pairs(14))
    def test_unit_norm(self, n, m):
        r, w = gauss_unit(n + 2)
        body = radial_build(n, m)
        assert np.sum(w * r * body.at(r) ** 2) == pytest.approx(1.0, abs=1e-10)


class TestNoll:
    @pytest.mark.parametrize("n, m, j", [(0, 0, 1), (1, -1, 3), (4, 2, 12)])
    def test_forward_examples(self, n, m, j):
        assert noll_index(n, m) == j

    @pytest.mark.parametrize("j, nm", [(1, (0, 0)), (7, (3, -1)), (15, (4, -4))])
    def test_inverse_examples(self, j, nm):
        assert noll_inverse(j) == nm

    def test_against_enumeration(self):
        table = noll_enumeration(25)
        for j, nm in table.items():
            assert noll_inverse(j) == nm
            assert noll_index(*nm) == j

    def test_against_closed_form(self):
        for n, m in valid_pairs(30):
            assert noll_index(n, m) == noll_closed_form(n, m)

    def test_bijection(self):
        for n, m in valid_pairs(20):
            assert noll_inverse(noll_index(n, m)) == (n, m)
        for j in range(1, 201):
            assert noll_index(*noll_inverse(j)) == j

    def test_sign_parity(self):
        for j in range(1, 500):
            _, m = noll_inverse(j)
            if j % 2 == 0:
                assert m >= 0
            elif j > 1:
                assert m <= 0

    @pytest.mark.parametrize("bad", [0, -3])
    def test_inverse_rejects(self, bad):
        with pytest.raises(ParameterError):
            noll_inverse(bad)

    def test_forward_rejects(self):
        with pytest.raises(ParameterError):
            noll_index(2, 1)
        with pytest.raises(ParameterError):
            noll_index(1, 3)


class TestAzimuthal:
    def test_eval_examples(self):
        assert azimuthal_eval(AzimuthalTerm(0), 1.234) == pytest.approx(0.3989423, abs=1e-7)
        assert azimuthal_eval(AzimuthalTerm(1), 0.0) == pytest.approx(0.5641896, abs=1e-7)
        assert azimuthal_eval(AzimuthalTerm(-2), math.pi / 4) == pytest.approx(0.5641896, abs=1e-7)

    def test_coefficient_scales(self):
        t = AzimuthalTerm(3, 2.0)
        assert t.at(0.4) == pytest.approx(2 * azimuthal_oracle(3, 0.4), rel=1e-15)
        assert (t / 4).coeff == 0.5
        assert (3 * t).coeff == 6.0

    def test_product_examples(self):
        a1, am1 = AzimuthalTerm(1), AzimuthalTerm(-1)
        assert azimuthal_product(a1, a1).as_dict() == pytest.approx({0: 0.3989423, 2: 0.2820948}, abs=1e-7)
        assert azimuthal_product(a1, am1).as_dict() == pytest.approx({-2: 0.2820948}, abs=1e-7)
        assert azimuthal_product(am1, am1).as_dict() == pytest.approx({0: 0.3989423, 2: -0.2820948}, abs=1e-7)

    def test_product_by_trig_identities(self):
        # cos^2/pi = (1 + cos 2x)/(2 pi), sin^2/pi = (1 - cos 2x)/(2 pi), cos sin/pi = sin 2x/(2 pi)
        half = 1 / (2 * SQRT_PI)
        assert azimuthal_product(AzimuthalTerm(1), AzimuthalTerm(1)).as_dict() == pytest.approx(
            {0: 1 / math.sqrt(2 * math.pi), 2: half}, rel=1e-15
        )
        assert azimuthal_product(AzimuthalTerm(-1), AzimuthalTerm(1)).as_dict() == pytest.approx(
            {-2: half}, rel=1e-15
        )

    def test_product_consistency(self):
        phi = np.linspace(-np.pi, np.pi, 32, endpoint=False) + 0.05
        for m1, m2 in itertools.product(range(-5, 6), repeat=2):
            t1, t2 = AzimuthalTerm(m1, 1.3), AzimuthalTerm(m2, -0.7)
            prod = azimuthal_product(t1, t2)
            np.testing.assert_allclose(prod.at(phi), t1.at(phi) * t2.at(phi), atol=1e-12)

    def test_mixed_case_equal_orders_has_single_term(self):
        assert list(azimuthal_product(AzimuthalTerm(3), AzimuthalTerm(-3)).as_dict()) == [-6]

    def test_orthonormal_by_trapezoid(self):
        phi = 2 * np.pi * np.arange(64) / 64
        for m1, m2 in itertools.product(range(-8, 9), repeat=2):
            val = np.sum(AzimuthalTerm(m1).at(phi) * AzimuthalTerm(m2).at(phi)) * 2 * np.pi / 64
            assert val == pytest.approx(float(m1 == m2), abs=1e-9)

    def test_sum_arithmetic(self):
        s = AzimuthalSum([AzimuthalTerm(1, 2.0), AzimuthalTerm(-2, 1.0)]) + AzimuthalTerm(1, -2.0)
        assert s.as_dict() == {-2: 1.0}
        prod = AzimuthalSum([AzimuthalTerm(1), AzimuthalTerm(-1)]) * AzimuthalSum([AzimuthalTerm(2)])
        phi = np.linspace(0, 6, 17)
        np.testing.assert_allclose(
            prod.at(phi), (azimuthal_oracle(1, phi) + azimuthal_oracle(-1, phi)) * azimuthal_oracle(2, phi), atol=1e-14
        )


class TestGCoefficient:
    def test_constant_factor(self):
        for n, m in valid_pairs(8):
            assert g_coefficient(0, 0, n, m, n, m) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_examples(self):
        assert g_coefficient(1, 1, 1, 1, 2, 0) == pytest.approx(2 / math.sqrt(6), abs=1e-12)
        assert g_coefficient(1, 1, 1, 1, 2, 0) == pytest.approx(0.8164966, abs=1e-7)
        assert g_coefficient(1, 1, 1, 1, 2, 2) == pytest.approx(1.6329932, abs=1e-7)

    def test_method_on_radial(self):
        assert radial_build(1, 1).g(1, 1, 2, 2) == g_coefficient(1, 1, 1, 1, 2, 2)

    def test_invalid_rejected(self):
        with pytest.raises(ParameterError):
            g_coefficient(1, 0, 1, 1, 2, 0)

    def test_against_quadrature_and_symmetry(self):
        r, w = gauss_unit(16)
        pairs = valid_pairs(6)
        vals = {(n, abs(m)): radial_oracle(n, m, r) for n, m in pairs}
        for (n1, a1), (n2, a2), (n3, a3) in itertools.combinations_with_replacement(sorted(vals), 3):
            quad = np.sum(w * r * vals[n1, a1] * vals[n2, a2] * vals[n3, a3])
            g = g_coefficient(n1, a1, n2, a2, n3, a3)
            assert g == pytest.approx(quad, abs=1e-9)
            for perm in itertools.permutations([(n1, -a1), (n2, a2), (n3, a3)]):
                assert abs(g_coefficient(*itertools.chain(*perm)) - g) <= 1e-12


class TestZernikeTerm:
    def test_eval_examples(self):
        assert zernike_eval(ZernikeTerm(0, 0), PointDisk(0.3, 0.2)) == pytest.approx(0.5641896, abs=1e-7)
        assert zernike_eval(ZernikeTerm(1, 1), PointDisk(0.5, 0.0)) == pytest.approx(0.5641896, abs=1e-7)

    @pytest.mark.parametrize("n, m", valid_pairs(5))
    def test_zero_outside(self, n, m):
        assert zernike_eval(ZernikeTerm(n, m), PointDisk(1.5, 0.0)) == 0.0
        assert zernike_eval(ZernikeTerm(n, m, 3.0), PointDisk(0.8, 0.61)) == 0.0

    def test_rim_is_evaluated(self):
        assert zernike_eval(ZernikeTerm(2, 0), PointDisk(1.0, 0.0)) == pytest.approx(
            math.sqrt(3 / math.pi), rel=1e-14
        )

    @pytest.mark.parametrize("n, m", valid_pairs(8))
    def test_matches_oracle(self, n, m):
        x, y = disk_points(20, seed=n * 31 + m)
        t = ZernikeTerm(n, m, 1.5)
        got = [t.at(PointDisk(a, b)) for a, b in zip(x, y)]
        np.testing.assert_allclose(got, 1.5 * zernike_oracle(n, m, x, y), atol=1e-12)
        np.testing.assert_allclose(t.evaluate(x, y), got, atol=1e-14)

    @pytest.mark.parametrize("n, m", [(2, 1), (1, 3), (3, -5), (-1, -1)])
    def test_invalid_indices_give_zero_prefactor(self, n, m):
        t = ZernikeTerm(n, m, 4.0)
        assert t.coeff == 0.0
        assert not t.valid
        assert t.at(PointDisk(0.1, 0.2)) == 0.0
        assert len(ZernikeExpansion([t])) == 0

    def test_from_noll(self):
        t = ZernikeTerm.from_noll(12, 2.0)
        assert (t.n, t.m, t.coeff) == (4, 2, 2.0)
        assert t.noll == 12

    def test_scaling(self):
        t = ZernikeTerm(3, 1, 2.0)
        assert (t * 3).coeff == 6.0
        assert (t / 4).coeff == 0.5
        assert (-t).coeff == -2.0


class TestExpansion:
    def test_eval_examples(self):
        assert expansion_eval(ZernikeExpansion(), PointDisk(0.2, 0.1)) == 0.0
        assert expansion_eval(ZernikeExpansion({(0, 0): SQRT_PI}), PointDisk(0.2, -0.7)) == pytest.approx(
            1.0, abs=1e-15
        )
        e = ZernikeExpansion({(1, 1): 1.0, (1, -1): 1.0})
        assert expansion_eval(e, PointDisk(0.5, 0.5)) == pytest.approx(1.1283792, abs=1e-7)

    def test_outside_is_zero(self):
        e = ZernikeExpansion({(0, 0): 1.0, (4, 2): -2.0})
        assert e.at(PointDisk(0.0, -1.0000001)) == 0.0
        assert np.all(e.evaluate(np.array([2.0, 0.0]), np.array([0.0, 1.5])) == 0.0)

    def test_normalised_in_noll_order(self):
        e = ZernikeExpansion([ZernikeTerm(4, -4), ZernikeTerm(0, 0), ZernikeTerm(2, 2), ZernikeTerm(2, 2, -1.0)])
        assert list(e.as_dict()) == [(0, 0), (4, -4)]

    def test_tiny_coefficients_pruned(self):
        e = ZernikeExpansion({(1, 1): 1.0}) + ZernikeExpansion({(1, 1): -1.0 + 1e-13})
        assert len(e) == 0

    def test_linear_ops(self):
        a = ZernikeExpansion({(1, 1): 1.0, (2, 0): 2.0})
        b = ZernikeExpansion({(2, 0): -2.0, (3, 3): 1.0})
        assert (a + b).as_dict() == {(1, 1): 1.0, (3, 3): 1.0}
        assert (a - a).as_dict() == {}
        assert (2 * a / 4).as_dict() == {(1, 1): 0.5, (2, 0): 1.0}


class TestProduct:
    @pytest.mark.parametrize("n, m", valid_pairs(5))
    def test_constant_factor(self, n, m):
        e = expansion_product(ZernikeExpansion([ZernikeTerm(0, 0)]), ZernikeExpansion([ZernikeTerm(n, m)]))
        assert e.as_dict() == pytest.approx({(n, m): 0.5641896}, abs=1e-7)

    def test_tilt_squared(self):
        z = ZernikeExpansion([ZernikeTerm(1, 1)])
        got = expansion_product(z, z).as_dict()
        assert got.keys() == Z11_SQUARED.keys()
        for k, v in Z11_SQUARED.items():
            assert got[k] == pytest.approx(v, abs=1e-12)

    def test_empty_annihilates(self):
        z = ZernikeExpansion({(3, 1): 2.0})
        assert len(expansion_product(ZernikeExpansion(), z)) == 0
        assert len(expansion_product(z, ZernikeExpansion())) == 0

    def test_operators(self):
        z = ZernikeTerm(1, 1)
        assert (z * z).as_dict() == expansion_product(z, z).as_dict()
        assert (ZernikeExpansion([z]) * z) == expansion_product(z, z)

    def test_against_projection_quadrature(self):
        x, y, w = disk_quadrature(radial_nodes=16, angular_nodes=48)
        a = ZernikeExpansion({(3, 1): 0.7, (2, -2): -1.2, (0, 0): 0.3})
        b = ZernikeExpansion({(4, 0): 1.1, (3, -3): 0.5})
        prod = expansion_product(a, b)
        f = a.evaluate(x, y) * b.evaluate(x, y)
        for n, m in valid_pairs(7):
            proj = np.sum(w * f * zernike_oracle(n, m, x, y))
            assert prod.coeff(n, m) == pytest.approx(proj, abs=1e-11)

    def test_multi_term_pointwise(self):
        a = ZernikeExpansion({(n, m): 0.1 * (n + 1) - 0.05 * m for n, m in valid_pairs(4)})
        b = ZernikeExpansion({(5, 1): 1.0, (6, -4): -0.3, (2, 2): 2.0})
        x, y = disk_points(30, seed=7)
        np.testing.assert_allclose(
            expansion_product(a, b).evaluate(x, y), a.evaluate(x, y) * b.evaluate(x, y), atol=1e-9
        )


class TestConversions:
    def test_to_polynomial_examples(self):
        c = 2 / SQRT_PI
        assert zernike_to_polynomial(ZernikeTerm(1, 1)).as_dict() == pytest.approx({(1, 0): c}, rel=1e-15)
        assert zernike_to_polynomial(ZernikeTerm(1, -1)).as_dict() == pytest.approx({(0, 1): c}, rel=1e-15)
        s = math.sqrt(3 / math.pi)
        assert zernike_to_polynomial(ZernikeTerm(2, 0)).as_dict() == pytest.approx(
            {(0, 0): -s, (2, 0): 2 * s, (0, 2): 2 * s}, rel=1e-15
        )
        assert s == pytest.approx(0.9772050, abs=1e-7)

    def test_from_polynomial_examples(self):
        assert polynomial_to_zernike(Polynomial2({(0, 0): 1.0})).as_dict() == pytest.approx(
            {(0, 0): 1.7724539}, abs=1e-7
        )
        assert polynomial_to_zernike(Monomial2(1.0, 1, 0)).as_dict() == pytest.approx({(1, 1): 0.8862269}, abs=1e-7)
        got = polynomial_to_zernike(Polynomial2({(2, 0): 1.0, (0, 2): 1.0})).as_dict()
        assert got == pytest.approx({(0, 0): SQRT_PI / 2, (2, 0): math.sqrt(math.pi / 3) / 2}, rel=1e-14)
        assert got == pytest.approx({(0, 0): 0.8862269, (2, 0): 0.5116634}, abs=1e-7)

    def test_max_degree_equals_total_degree(self):
        p = Polynomial2({(3, 2): 1.0, (0, 1): -2.0})
        assert polynomial_to_zernike(p).max_degree == 5

    @pytest.mark.parametrize("p, q", [(p, d - p) for d in range(7) for p in range(d + 1)])
    def test_from_polynomial_matches_projection(self, p, q):
        x, y, w = disk_quadrature(radial_nodes=12, angular_nodes=32)
        e = polynomial_to_zernike(Polynomial2({(p, q): 1.0}))
        f = x**p * y**q
        for n, m in valid_pairs(p + q + 2):
            assert e.coeff(n, m) == pytest.approx(np.sum(w * f * zernike_oracle(n, m, x, y)), abs=1e-12)

    @pytest.mark.parametrize("n, m", valid_pairs(8))
    def test_term_round_trip(self, n, m):
        back = polynomial_to_zernike(zernike_to_polynomial(ZernikeTerm(n, m)))
        assert back.as_dict().keys() == {(n, m)}
        assert back.coeff(n, m) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("p, q", [(p, d - p) for d in range(9) for p in range(d + 1)])
    def test_monomial_round_trip(self, p, q):
        back = zernike_to_polynomial(polynomial_to_zernike(Polynomial2({(p, q): 1.0}))).as_dict()
        assert back[(p, q)] == pytest.approx(1.0, abs=1e-10)
        assert all(abs(v) <= 1e-10 for k, v in back.items() if k != (p, q))

    def test_zero_polynomial(self):
        assert len(polynomial_to_zernike(Polynomial2())) == 0
        assert zernike_to_polynomial(ZernikeExpansion()) == Polynomial2()


class TestText:
    def test_format_noll_sorted_12_digits(self):
        e = ZernikeExpansion(Z11_SQUARED)
        assert format_expansion(e) == "0 0 0.564189583548\n2 0 0.325735007935\n2 2 0.460658865962\n"

    def test_parse(self):
        text = "# product\r\n2 2 1.5\n\n0 0 -1  # piston\n2 2 0.5\n"
        assert parse_expansion(text).as_dict() == {(0, 0): -1.0, (2, 2): 2.0}

    def test_round_trip_precision(self):
        e = ZernikeExpansion({(n, m): math.sin(n + 3 * m) for n, m in valid_pairs(5)})
        back = parse_expansion(format_expansion(e))
        for k, v in e.as_dict().items():
            assert back.coeff(*k) == pytest.approx(v, rel=1e-11)

    @pytest.mark.parametrize(
        "text, line", [("0 0 1\n2 1 3\n", 2), ("1 1\n", 1), ("# c\n\n1 1 x\n", 3), ("1.5 1 1\n", 1)]
    )
    def test_parse_errors(self, text, line):
        with pytest.raises(ParseError, match=f":{line}:"):
            parse_expansion(text, name="e.txt")
