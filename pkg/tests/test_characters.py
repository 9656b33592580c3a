"""Character group enumeration, orthogonality, conductors."""

import math

import pytest

from primebias import character_group


def test_group_sizes():
    for m in (1, 2, 3, 4, 5, 8, 12, 24, 30, 101):
        group = character_group(m)
        phi = sum(1 for a in range(1, m + 1) if math.gcd(a, m) == 1)
        assert len(group.characters()) == phi


def test_mod5_generator_table():
    # 2 generates (Z/5)*; the four characters send 2 to the four 4th roots
    group = character_group(5)
    seen = set()
    for chi in group.characters():
        z = chi(2)
        seen.add(complex(round(z.real, 12), round(z.imag, 12)))
        # multiplicativity pins the rest of the table
        assert chi(4) == pytest.approx(z * z, abs=1e-12)
        assert chi(3) == pytest.approx(z ** 3, abs=1e-12)
    assert seen == {1 + 0j, -1 + 0j, 1j, -1j}


def test_principal_character():
    chi0 = character_group(12).principal()
    for n in range(1, 13):
        want = 1.0 if math.gcd(n, 12) == 1 else 0.0
        assert chi0(n) == pytest.approx(want, abs=1e-14)
    assert chi0.is_principal()


@pytest.mark.parametrize("m", [3, 4, 5, 8, 9, 12, 15, 16, 24, 40, 72, 100])
def test_row_orthogonality(m):
    group = character_group(m)
    phi = len(group.characters())
    for chi in group.characters():
        s = sum(chi(n) for n in range(1, m + 1))
        want = phi if chi.is_principal() else 0.0
        assert abs(s - want) < 1e-12


@pytest.mark.parametrize("m", [3, 4, 5, 8, 9, 12, 15, 16, 24, 40, 72, 100])
def test_column_orthogonality(m):
    group = character_group(m)
    phi = len(group.characters())
    for n in range(1, m + 1):
        s = sum(chi(n) for chi in group.characters())
        if n % m == 1:
            want = phi
        else:
            want = 0.0
        assert abs(s - want) < 1e-12


def test_values_table_matches_call():
    for m in (5, 12, 16):
        for chi in character_group(m).characters():
            table = chi.values_table()
            assert len(table) == m
            for n in range(1, m + 1):
                assert table[n % m] == pytest.approx(chi(n), abs=1e-12)


def test_parity_partition():
    # chi(-1) = +-1, and exactly half the characters are odd for m > 2
    for m in (3, 4, 5, 8, 12, 15, 40):
        group = character_group(m)
        odd = [chi for chi in group.characters() if chi.is_odd()]
        even = [chi for chi in group.characters() if not chi.is_odd()]
        assert len(odd) == len(even)
        for chi in odd:
            assert chi(m - 1) == pytest.approx(-1.0, abs=1e-12)
        for chi in even:
            assert chi(m - 1) == pytest.approx(1.0, abs=1e-12)


def test_conjugate_inverts_values():
    for chi in character_group(7).characters():
        bar = chi.conjugate()
        for n in range(1, 7):
            assert bar(n) == pytest.approx(chi(n).conjugate(), abs=1e-12)


def test_conductors_mod12():
    group = character_group(12)
    conductors = sorted(chi.conductor() for chi in group.characters())
    assert conductors == [1, 3, 4, 12]


def test_conductors_mod8():
    conductors = sorted(chi.conductor() for chi in character_group(8).characters())
    assert conductors == [1, 4, 8, 8]


def test_primitive_character_agrees_on_coprimes():
    for m in (12, 24, 45):
        for chi in character_group(m).characters():
            star = chi.primitive()
            assert star.modulus == chi.conductor()
            for n in range(1, 3 * m):
                if math.gcd(n, m) == 1:
                    assert chi(n) == pytest.approx(star(n), abs=1e-12)


def test_order_divides_group_order():
    group = character_group(16)
    for chi in group.characters():
        k = chi.order()
        assert k >= 1
        for n in range(1, 16):
            if math.gcd(n, 16) == 1:
                assert chi(n) ** k == pytest.approx(1.0, abs=1e-10)


def test_name_round_trip():
    group = character_group(12)
    names = [chi.name() for chi in group.characters()]
    assert len(set(names)) == len(names)
    for name in names:
        assert name.startswith("mod12:")
