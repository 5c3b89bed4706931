"""The standard alternating form, elementary symplectic generators, and
E-versus-ESp orbit comparisons."""

from __future__ import annotations

from .elementary import UnimodularRow, build_letters, orbit_bfs
from .errors import IndexOutOfRange, InfiniteRing, OddSize
from .matrices import MatrixR
from .words import letter_matrix, sigma_pair, symp_letter


def sigma(m, k):
    """The index pairing of the standard form: 2i <-> 2i-1, 1 <= k <= 2m."""
    if not 1 <= k <= 2 * m:
        raise IndexOutOfRange(f"index {k} for half-size {m}")
    return sigma_pair(k)


def symplectic_form(ring, m):
    """psi_m: the block-diagonal sum of m copies of [[0,1],[-1,0]]."""
    n = 2 * m
    rows = [[ring.zero] * n for _ in range(n)]
    for b in range(m):
        rows[2 * b][2 * b + 1] = ring.one
        rows[2 * b + 1][2 * b] = ring.neg(ring.one)
    return MatrixR(ring, rows)


def se_gen(ring, m, i, j, z):
    """The elementary symplectic generator se_ij(z) of size 2m."""
    return letter_matrix(ring, 2 * m, symp_letter(ring, 2 * m, i, j, z))


def is_symplectic(matrix):
    """Exact check of the defining identity M^T psi M = psi."""
    if matrix.n % 2:
        raise OddSize(f"size {matrix.n} is odd")
    psi = symplectic_form(matrix.ring, matrix.n // 2)
    return matrix.transpose().mul(psi).mul(matrix) == psi


class OrbitComparison:
    """Set comparison of two orbits of the same base row."""

    def __init__(self, equal, left_size, right_size, witness=None):
        self.equal = equal
        self.left_size = left_size
        self.right_size = right_size
        self.witness = witness

    def __repr__(self):
        tag = "Equal" if self.equal else "Differ"
        return f"<{tag} {self.left_size}/{self.right_size}>"


def compare_e_esp_orbits(ring, m, row=None, lambda_range="full"):
    """Compare the E_{2m}- and ESp_{2m}-orbits of a row as sets.

    Defaults to the first basis row e1, where the two orbits must agree.
    """
    if not ring.is_finite:
        raise InfiniteRing("orbit comparison needs a finite ring")
    n = 2 * m
    if row is None:
        row = UnimodularRow.e1(ring, n)
    e_orbit = orbit_bfs(row, mode="E", lambda_range=lambda_range)
    esp_orbit = orbit_bfs(row, mode="ESp", lambda_range=lambda_range)
    left, right = e_orbit.as_set(), esp_orbit.as_set()
    if left == right:
        return OrbitComparison(True, len(left), len(right))
    diff = sorted(left ^ right)[0]
    return OrbitComparison(False, len(left), len(right), witness=diff)


def rel_esp_orbit(row, ideal, budget=None, conj_depth=2):
    """Budgeted relative elementary-symplectic orbit (subset mode)."""
    return orbit_bfs(
        row, mode="ESp_rel", ideal=ideal, budget=budget, conj_depth=conj_depth
    )


def compare_relative_orbits(row, ideal, budget=None, conj_depth=2):
    """Subset-mode comparison of the relative E- and ESp-orbits of a row.

    Both sides are verified subsets of the true relative orbits, so only
    containment of the computed sets is reported, never completeness.
    """
    e_orbit = orbit_bfs(
        row, mode="E_rel", ideal=ideal, budget=budget, conj_depth=conj_depth
    )
    esp_orbit = orbit_bfs(
        row, mode="ESp_rel", ideal=ideal, budget=budget, conj_depth=conj_depth
    )
    left, right = e_orbit.as_set(), esp_orbit.as_set()
    return {
        "e_subset_size": len(left),
        "esp_subset_size": len(right),
        "equal_as_sets": left == right,
        "e_minus_esp": len(left - right),
        "esp_minus_e": len(right - left),
        "subset_mode": True,
    }
