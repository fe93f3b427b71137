import json
import os
import subprocess
from fractions import Fraction
from itertools import permutations

import pytest

import permlab


def test_example_deck():
    deck = permlab.example_deck()
    assert len(deck) == 52
    assert permlab.shift_hint(deck) == 29
    assert permlab.shift_counts(deck)[29] == 4
    n = len(deck)
    assert permlab.shift_vector(deck) == [(i - deck[i]) % n for i in range(n)]


def test_exact_counts():
    assert permlab.factorial(25) == 15511210043330985984000000
    assert permlab.derangements(6) == 265
    assert sum(permlab.rencontres(10, r) for r in range(11)) == permlab.factorial(10)
    assert permlab.shift_count_pmf(4, 1) == Fraction(1, 3)


def test_strategies():
    assert permlab.evaluate_exact("naive", 6)["overall"] == Fraction(1, 3)
    shift = permlab.evaluate_exact("shift", 3)
    assert shift["overall"] == Fraction(2, 3)
    assert set(shift["per_target"]) == {Fraction(2, 3)}


def test_field():
    best = permlab.brute_force_field(3, 3, aic=True)
    assert best["field"] == 12
    assert permlab.aic_check(3, 3, best["witness"])
    assert permlab.field_of_partition(3, 3, best["witness"]) == 12


def test_structure_against_enumeration():
    n, s = 6, 2
    I, J = [0], [3]
    perms = list(permutations(range(n)))
    at_least = sum(all(p[i] == i for i in I) and all(p[j] == (j + s) % n for j in J) for p in perms)
    assert permlab.count_phi_star(n, I, J, s) == at_least
    assert permlab.is_compatible(n, I, J, s)
    assert permlab.joint_shift_pmf(5, 0, 1, 1) > 0
    cov = permlab.covariance(7, 1, exact=True)
    assert isinstance(cov["cov_exact"], Fraction)


def test_simulation_is_seeded():
    a = permlab.simulate_needle(50, trials=5000, seed=9)
    b = permlab.simulate_needle(50, trials=5000, seed=9, workers=4)
    assert a == b
    exact = permlab.simulate_needle(5, exhaustive=True, strategy="naive")
    assert exact["estimate"] == pytest.approx(0.4)
    locker = permlab.play_locker(list(range(8)), 3)
    assert locker["success"] and locker["second_locker"] == 3
    dist = permlab.max_shift_distribution(4, exhaustive=True)
    assert dist["trials"] == 24


def test_errors():
    with pytest.raises(permlab.PermlabError) as info:
        permlab.evaluate_exact("shift", 9)
    assert info.value.refusal
    with pytest.raises(ValueError):
        permlab.shift_vector([0, 0, 1])


def test_cli_in_process():
    code, out, _ = permlab.run_cli(["exact", "--n", "4", "--strategy", "naive"])
    assert code == 0
    assert json.loads(out)["result"]["overall"]["exact"] == "1/2"
    assert permlab.run_cli(["exact", "--n", "9"])[0] == 3


@pytest.mark.skipif("PERMLAB_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_binary():
    proc = subprocess.run([os.environ["PERMLAB_CLI"], "example52"], capture_output=True, text=True, check=True)
    doc = json.loads(proc.stdout)
    assert doc["result"]["hint"] == 29
    assert doc["result"]["success"]["exact"] == "1/13"
