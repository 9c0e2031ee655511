"""Arithmetic in GF(2^d) for odd d >= 3, with the Suzuki twist.

Field elements are plain ints in [0, 2^d): bit i is the coefficient of t^i.
Addition is xor.  Multiplication goes through log/exp tables built from a
fixed generator, and the automorphisms x -> x^(2^s) are table lookups, so
every scalar operation is O(1) after construction.

The twist theta(x) = x^(2^(e+1)) where d = 2e+1 satisfies theta(theta(x))
= x^2, which is what makes odd degree mandatory.
"""

from .errors import DegreeTooSmallError, EvenDegreeError


def _pmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed binary polynomials."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def _pmod(a: int, m: int) -> int:
    """Remainder of a modulo m, both bit-packed, m nonzero."""
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    return _pmod(_pmul(a, b), m)


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _x_pow_2pow(i: int, m: int) -> int:
    """t^(2^i) reduced modulo m, by repeated squaring."""
    v = 2
    for _ in range(i):
        v = _pmulmod(v, v, m)
    return v


def is_irreducible(m: int) -> bool:
    """Rabin test for a bit-packed binary polynomial of degree >= 1."""
    d = m.bit_length() - 1
    if d < 1:
        return False
    if _x_pow_2pow(d, m) != 2:
        return False
    for p in _prime_factors(d):
        if _pgcd(_x_pow_2pow(d // p, m) ^ 2, m) != 1:
            return False
    return True


def smallest_irreducible(degree: int) -> int:
    """Lexicographically smallest irreducible bit-packed poly of given degree."""
    for m in range((1 << degree) + 1, 1 << (degree + 1), 2):
        if is_irreducible(m):
            return m
    raise RuntimeError(f"no irreducible polynomial of degree {degree}")


class FieldParams:
    """GF(2^d) with precomputed multiplication and automorphism tables.

    Attributes: degree (= 2e+1), e, q = 2^degree, r = 2^(e+1) (so r*r == 2*q),
    modulus, generator, exp/log tables, pow2[s] giving x -> x^(2^s), and
    triality_exponent = degree // 3 when 3 divides the degree, else None.
    """

    def __init__(self, degree: int, modulus: int | None = None):
        if degree % 2 == 0:
            raise EvenDegreeError(f"degree must be odd, got {degree}")
        if degree < 3:
            raise DegreeTooSmallError(f"degree must be >= 3, got {degree}")
        if modulus is None:
            modulus = smallest_irreducible(degree)
        elif modulus.bit_length() - 1 != degree or not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#b} is not irreducible of degree {degree}")
        self.degree = degree
        self.e = (degree - 1) // 2
        self.q = 1 << degree
        self.r = 1 << (self.e + 1)
        self.modulus = modulus
        self.triality_exponent = degree // 3 if degree % 3 == 0 else None
        self.generator = self._find_generator()
        self._build_tables()

    def _find_generator(self) -> int:
        n = self.q - 1
        primes = _prime_factors(n)
        for g in range(2, self.q):
            if all(self._raw_pow(g, n // p) != 1 for p in primes):
                return g
        raise RuntimeError("no multiplicative generator found")

    def _raw_pow(self, a: int, n: int) -> int:
        v = 1
        while n:
            if n & 1:
                v = _pmulmod(v, a, self.modulus)
            a = _pmulmod(a, a, self.modulus)
            n >>= 1
        return v

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = [0] * n
        log = [0] * self.q
        cur = 1
        for i in range(n):
            exp[i] = cur
            log[cur] = i
            cur = _pmulmod(cur, self.generator, self.modulus)
        # doubled so mul never needs a modular reduction of the index
        self.exp = exp + exp
        self.log = log
        # pow2[s][x] = x^(2^s); pow2[0] is the identity
        pow2 = [list(range(self.q))]
        for _ in range(1, self.degree):
            last = pow2[-1]
            pow2.append([self.mul(v, v) for v in last])
        self.pow2 = pow2

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a field")
        return self.exp[self.q - 1 - self.log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("negative power of 0 in a field")
            return 0
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def auto(self, x: int, s: int) -> int:
        """Field automorphism x -> x^(2^s)."""
        return self.pow2[s % self.degree][x]

    def frobenius(self, x: int) -> int:
        return self.pow2[1][x]

    def theta(self, x: int) -> int:
        """The Suzuki twist x -> x^(2^(e+1)); its square is the Frobenius."""
        return self.pow2[self.e + 1][x]

    def theta_inv(self, x: int) -> int:
        return self.pow2[self.e][x]

    def __repr__(self) -> str:
        return f"FieldParams(degree={self.degree}, modulus={self.modulus:#b})"


def make_field(degree: int) -> FieldParams:
    """Build GF(2^degree) over the smallest irreducible modulus."""
    return FieldParams(degree)
