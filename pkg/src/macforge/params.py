"""Group parameters for the Macdonald 2-group family and its odd-prime cousins."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GroupParams:
    """Arithmetic constants attached to a choice of m >= 1 and odd ell.

    alpha = 1 + 2^m * ell drives every conjugation relation; s, u, r, rbar
    are the size constants every exponent formula is written in.
    """

    m: int
    ell: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.ell % 2 == 0:
            raise ValueError(f"ell must be odd, got {self.ell}")

    @property
    def alpha(self) -> int:
        return 1 + 2**self.m * self.ell

    @property
    def s(self) -> int:
        return 2 ** (self.m - 1)

    @property
    def u(self) -> int:
        return self.s * self.s

    @property
    def r(self) -> int | None:
        # s/2, only meaningful once s is even
        return self.s // 2 if self.m > 1 else None

    @property
    def rbar(self) -> int | None:
        return self.r // 2 if self.m > 2 else None

    def require_r(self) -> int:
        if self.r is None:
            raise ValueError("this construction needs m > 1 (r = s/2 is undefined at m = 1)")
        return self.r

    def require_rbar(self) -> int:
        if self.rbar is None:
            raise ValueError("this construction needs m > 2 (rbar = r/2 is undefined at m <= 2)")
        return self.rbar

    def __str__(self):
        return f"[m={self.m}, ell={self.ell}]"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class OddPrimeParams:
    """Parameters for the odd-prime Sylow subgroup: alpha = 1 + p^m * ell.

    chi is the exact rational 1/2 for p = 2 and (1 + p^m)/2 otherwise; it
    multiplies the xi correction of the generic commutator identity.
    Standing hypothesis: for (p, m) = (3, 1), (alpha - 1)/3 must be 1 mod 3.
    """

    p: int
    m: int
    ell: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.ell % self.p == 0:
            raise ValueError(f"ell must not be divisible by p={self.p}, got {self.ell}")
        if (self.p, self.m) == (3, 1) and (self.alpha - 1) // 3 % 3 != 1:
            raise ValueError(
                f"hypothesis violated at (p,m)=(3,1): (alpha-1)/3 = {(self.alpha - 1) // 3} "
                "is not 1 mod 3"
            )

    @property
    def alpha(self) -> int:
        return 1 + self.p**self.m * self.ell

    @property
    def chi(self) -> Fraction:
        if self.p == 2:
            return Fraction(1, 2)
        return Fraction(1 + self.p**self.m, 2)

    @property
    def delta_p3(self) -> int:
        return 1 if self.p == 3 else 0

    def __str__(self):
        return f"[p={self.p}, m={self.m}, ell={self.ell}]"
