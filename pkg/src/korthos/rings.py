"""Finite commutative rings with unity on dense element indices.

Every ring presents its elements as the integers ``0 .. order-1`` with a fixed
enumeration order, so censuses and golden files are reproducible:

* ``Z_n``            -- by residue;
* ``GF(p, r)``       -- coefficient vector of the polynomial basis read as a
                        base-``p`` integer, constant term least significant;
* ``F + vF``         -- pair ``(a, b)`` for ``a + v*b``, index ``= a*|F| + b``;
* product rings      -- lexicographic by component.

Rings of order <= 256 are table-backed; larger rings compute elementwise on
demand with identical observable behaviour.  Ring axioms are verified
exhaustively at construction for order <= 64 (pass ``verify=True`` to force
the check on larger rings, ``verify=False`` to skip it).
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .errors import (
    InvalidParameterError,
    InvariantViolationError,
    NotAUnitError,
    RingMismatchError,
)

TABLE_CAP = 256
VERIFY_CAP = 64


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p (coefficient tuples, constant term first)

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_add(p, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim((x + y) % p for x, y in zip(a, b))


def _poly_mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(p, a, m):
    """Remainder of a by the monic polynomial m, coefficients mod p."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(len(m)):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _poly_is_irreducible(p, m):
    """Exhaustive factor check: no monic divisor of degree 1 .. deg(m)//2."""
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tail + (1,)
            if not _poly_mod(p, m, g):
                return False
    return True


def render_poly(coeffs):
    """Human form of a coefficient tuple, descending powers: ``x^2+x+1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            base = "x" if i == 1 else f"x^{i}"
            terms.append(base if c == 1 else f"{c}{base}")
    return "+".join(terms) if terms else "0"


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?x(?:\^(\d+))?$|^(\d+)$")


def parse_poly(text, p):
    """Parse ``x^2+x+1`` style polynomials into a coefficient tuple mod p."""
    s = text.replace(" ", "")
    if not s:
        raise InvalidParameterError("empty polynomial")
    coeffs = {}
    for term in s.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise InvalidParameterError(f"bad polynomial term {term!r} in {text!r}")
        if m.group(3) is not None:
            deg, c = 0, int(m.group(3))
        else:
            deg = int(m.group(2)) if m.group(2) else 1
            c = int(m.group(1)) if m.group(1) else 1
        coeffs[deg] = (coeffs.get(deg, 0) + c) % p
    top = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(top + 1))


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# low-weight irreducibles for every prime power p^r <= 49 with r >= 2
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),          # x^2+x+1
    (2, 3): (1, 1, 0, 1),       # x^3+x+1
    (2, 4): (1, 1, 0, 0, 1),    # x^4+x+1
    (2, 5): (1, 0, 1, 0, 0, 1), # x^5+x^2+1
    (3, 2): (1, 0, 1),          # x^2+1
    (3, 3): (1, 2, 0, 1),       # x^3+2x+1
    (5, 2): (2, 0, 1),          # x^2+2
    (7, 2): (1, 0, 1),          # x^2+1
}


# ---------------------------------------------------------------------------

class Ring:
    """A finite commutative ring with unity; elements are indices 0..order-1.

    Subclasses provide the raw arithmetic (`_raw_add`, `_raw_mul`, `_raw_neg`),
    rendering, and a structural `key`.  Two descriptors compare equal iff their
    keys match, so independently constructed copies of the same ring
    interoperate.
    """

    kind = "abstract"

    def __init__(self, order, verify=None):
        if order < 2:
            raise InvalidParameterError("ring must have at least two elements")
        self.order = order
        self._add_rows = None
        self._mul_rows = None
        self._neg_list = None
        self._units_cache = None
        self._inv_cache = None
        self._np_cache = None
        if order <= TABLE_CAP:
            rng = range(order)
            self._add_rows = tuple(tuple(self._raw_add(a, b) for b in rng) for a in rng)
            self._mul_rows = tuple(tuple(self._raw_mul(a, b) for b in rng) for a in rng)
            self._neg_list = tuple(self._raw_neg(a) for a in rng)
        if self.one == self.zero:
            raise InvalidParameterError("ring unity coincides with zero")
        c, acc = 1, self.one
        while acc != self.zero:
            acc = self.add(acc, self.one)
            c += 1
        self.char = c
        self.laws_verified = False
        if verify or (verify is None and order <= VERIFY_CAP):
            self._verify_axioms()
            self.laws_verified = True

    # subclass surface ------------------------------------------------------
    zero = 0
    one = 1

    def _raw_add(self, a, b):
        raise NotImplementedError

    def _raw_mul(self, a, b):
        raise NotImplementedError

    def _raw_neg(self, a):
        raise NotImplementedError

    @property
    def key(self):
        raise NotImplementedError

    @property
    def literal(self):
        raise NotImplementedError

    def render(self, a):
        raise NotImplementedError

    def parse_element(self, text):
        raise NotImplementedError

    # element arithmetic ----------------------------------------------------
    def check_element(self, a):
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise RingMismatchError(f"{a!r} is not an element index of {self.literal}")
        return a

    def add(self, a, b):
        if self._add_rows is not None:
            return self._add_rows[a][b]
        return self._raw_add(a, b)

    def mul(self, a, b):
        if self._mul_rows is not None:
            return self._mul_rows[a][b]
        return self._raw_mul(a, b)

    def neg(self, a):
        if self._neg_list is not None:
            return self._neg_list[a]
        return self._raw_neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def elements(self):
        return range(self.order)

    # derived structure -----------------------------------------------------
    def units(self):
        """The set of invertible elements."""
        if self._units_cache is None:
            inv = {}
            for a in self.elements():
                for b in self.elements():
                    if self.mul(a, b) == self.one:
                        inv[a] = b
                        break
            self._units_cache = frozenset(inv)
            self._inv_cache = inv
        return self._units_cache

    def is_unit(self, a):
        self.check_element(a)
        return a in self.units()

    def inverse(self, a):
        self.check_element(a)
        self.units()
        if a not in self._inv_cache:
            raise NotAUnitError(f"{self.render(a)} is not a unit in {self.literal}")
        return self._inv_cache[a]

    def idempotents(self):
        """Ascending list of all e with e*e = e.  Always contains 0 and 1."""
        return [e for e in self.elements() if self.mul(e, e) == e]

    def is_field(self):
        return len(self.units()) == self.order - 1

    def zero_divisor_count(self):
        """Nonzero non-units; in a finite commutative ring these are exactly
        the zero divisors."""
        return self.order - len(self.units()) - 1

    # numpy views (lazily built; used by the batch helpers) ------------------
    def _np_tables(self):
        if self._np_cache is None:
            if self._add_rows is None:
                raise InvalidParameterError(
                    f"vectorized ops need a table-backed ring (order <= {TABLE_CAP})"
                )
            dt = np.uint8 if self.order <= 256 else np.int64
            self._np_cache = (
                np.asarray(self._add_rows, dtype=dt),
                np.asarray(self._mul_rows, dtype=dt),
            )
        return self._np_cache

    @property
    def add_np(self):
        return self._np_tables()[0]

    @property
    def mul_np(self):
        return self._np_tables()[1]

    # axiom verification ----------------------------------------------------
    def _verify_axioms(self):
        n = self.order
        if self._add_rows is not None:
            add = np.asarray(self._add_rows, dtype=np.int64)
            mul = np.asarray(self._mul_rows, dtype=np.int64)
        else:
            rng = range(n)
            add = np.array([[self._raw_add(a, b) for b in rng] for a in rng], dtype=np.int64)
            mul = np.array([[self._raw_mul(a, b) for b in rng] for a in rng], dtype=np.int64)

        def fail(law):
            raise InvariantViolationError(f"{self.literal}: {law} fails")

        if not (add == add.T).all():
            fail("additive commutativity")
        if not (mul == mul.T).all():
            fail("multiplicative commutativity")
        i = np.arange(n)
        if not (add[self.zero] == i).all():
            fail("additive identity")
        if not (mul[self.one] == i).all():
            fail("multiplicative identity")
        if not ((add == self.zero).any(axis=1)).all():
            fail("additive inverses")
        # associativity and distributivity on all triples
        a = i[:, None, None]
        b = i[None, :, None]
        c = i[None, None, :]
        if not (add[add[a, b], c] == add[a, add[b, c]]).all():
            fail("additive associativity")
        if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
            fail("multiplicative associativity")
        if not (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all():
            fail("distributivity")

    # housekeeping ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Ring):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<Ring {self.literal} order={self.order}>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_np_cache"] = None
        return state


class ZmodRing(Ring):
    """Integers modulo n."""

    kind = "zmod"

    def __init__(self, n, verify=None):
        if not isinstance(n, int) or n < 2:
            raise InvalidParameterError("modulus must be an integer >= 2")
        self.n = n
        super().__init__(n, verify=verify)

    def _raw_add(self, a, b):
        return (a + b) % self.n

    def _raw_mul(self, a, b):
        return (a * b) % self.n

    def _raw_neg(self, a):
        return (-a) % self.n

    @property
    def key(self):
        return ("zmod", self.n)

    @property
    def literal(self):
        return f"Z{self.n}"

    def render(self, a):
        return str(a)

    def parse_element(self, text):
        try:
            return int(text.strip()) % self.n
        except ValueError:
            raise InvalidParameterError(f"cannot parse {text!r} as an element of {self.literal}")


class GaloisFieldRing(Ring):
    """GF(p^r) with polynomial-basis arithmetic modulo an explicit monic
    irreducible; element index = coefficient vector as a base-p integer."""

    kind = "field"

    def __init__(self, p, r, modulus=None, verify=None):
        if not _is_prime(p):
            raise InvalidParameterError(f"{p} is not prime")
        if not isinstance(r, int) or r < 1:
            raise InvalidParameterError("extension degree must be >= 1")
        self.p = p
        self.r = r
        if modulus is None:
            if r == 1:
                modulus = (0, 1)
            elif (p, r) in DEFAULT_MODULI:
                modulus = DEFAULT_MODULI[(p, r)]
            else:
                raise InvalidParameterError(
                    f"no default modulus for GF({p},{r}); pass one explicitly"
                )
        if isinstance(modulus, str):
            modulus = parse_poly(modulus, p)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise InvalidParameterError(
                f"modulus must be monic of degree {r}, got {render_poly(modulus)}"
            )
        if r > 1 and not _poly_is_irreducible(p, modulus):
            raise InvalidParameterError(f"{render_poly(modulus)} is reducible over Z{p}")
        self.modulus = modulus
        super().__init__(p ** r, verify=verify)

    # coefficient vector <-> index
    def coeffs(self, a):
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.r))

    def from_coeffs(self, vec):
        vec = tuple(vec)
        poly = _poly_mod(self.p, tuple(c % self.p for c in vec), self.modulus)
        return sum(c * self.p ** i for i, c in enumerate(poly))

    def _raw_add(self, a, b):
        p = self.p
        out = 0
        for i in range(self.r):
            out += (((a // p ** i) + (b // p ** i)) % p) * p ** i
        return out

    def _raw_mul(self, a, b):
        prod = _poly_mul(self.p, _poly_trim(self.coeffs(a)), _poly_trim(self.coeffs(b)))
        return self.from_coeffs(_poly_mod(self.p, prod, self.modulus))

    def _raw_neg(self, a):
        p = self.p
        return sum(((-c) % p) * p ** i for i, c in enumerate(self.coeffs(a)))

    @property
    def key(self):
        return ("field", self.p, self.r, self.modulus)

    @property
    def literal(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p},{self.r};{render_poly(self.modulus)})"

    def render(self, a):
        if self.r == 1:
            return str(a)
        return "(" + ",".join(str(c) for c in self.coeffs(a)) + ")"

    def parse_element(self, text):
        s = text.strip()
        if self.r == 1:
            try:
                return int(s) % self.p
            except ValueError:
                raise InvalidParameterError(f"cannot parse {s!r} as an element of {self.literal}")
        if not (s.startswith("(") and s.endswith(")")):
            raise InvalidParameterError(f"field element must be a coefficient tuple, got {s!r}")
        parts = [t for t in s[1:-1].split(",") if t.strip() != ""]
        if len(parts) != self.r:
            raise InvalidParameterError(f"expected {self.r} coefficients in {s!r}")
        return self.from_coeffs(int(t) for t in parts)


class VExtensionRing(Ring):
    """F + vF on pairs a + v*b over a Galois field F, with v*v = v (only for
    characteristic 2) or v*v = 1 (only for odd characteristic)."""

    kind = "vext"

    def __init__(self, base, v_square, verify=None):
        if not isinstance(base, GaloisFieldRing):
            raise InvalidParameterError("v-extension base must be a Galois field")
        v_square = str(v_square)
        if v_square not in ("v", "1"):
            raise InvalidParameterError("v_square must be 'v' or '1'")
        if v_square == "v" and base.char != 2:
            raise InvalidParameterError("v*v = v requires a characteristic-2 base field")
        if v_square == "1" and base.char == 2:
            raise InvalidParameterError("v*v = 1 requires an odd-characteristic base field")
        self.base = base
        self.v_square = v_square
        self.q = base.order
        super().__init__(self.q * self.q, verify=verify)

    def components(self, e):
        """(a, b) with e = a + v*b, both as base-field indices."""
        return divmod(e, self.q)

    def make(self, a, b):
        return a * self.q + b

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return self.base.one * self.q

    @property
    def v(self):
        """The index of the adjoined element v itself."""
        return self.base.one

    def _raw_add(self, x, y):
        a, b = divmod(x, self.q)
        c, d = divmod(y, self.q)
        F = self.base
        return F.add(a, c) * self.q + F.add(b, d)

    def _raw_mul(self, x, y):
        a, b = divmod(x, self.q)
        c, d = divmod(y, self.q)
        F = self.base
        ac = F.mul(a, c)
        ad = F.mul(a, d)
        bc = F.mul(b, c)
        bd = F.mul(b, d)
        if self.v_square == "v":
            return ac * self.q + F.add(F.add(ad, bc), bd)
        return F.add(ac, bd) * self.q + F.add(ad, bc)

    def _raw_neg(self, x):
        a, b = divmod(x, self.q)
        F = self.base
        return F.neg(a) * self.q + F.neg(b)

    @property
    def key(self):
        return ("vext", self.base.key, self.v_square)

    @property
    def literal(self):
        b = self.base.literal
        return f"{b}+v{b}[v2={self.v_square}]"

    def render(self, e):
        a, b = self.components(e)
        F = self.base
        if b == F.zero:
            return F.render(a)
        vpart = "v" if b == F.one else f"v*{F.render(b)}"
        if a == F.zero:
            return vpart
        return f"{F.render(a)}+{vpart}"

    def parse_element(self, text):
        s = text.strip().replace(" ", "")
        F = self.base
        if "v" not in s:
            return self.make(F.parse_element(s), F.zero)
        if s.startswith("v"):
            head, tail = "", s[1:]
        else:
            cut = _find_top_level(s, "+v")
            if cut < 0:
                raise InvalidParameterError(f"cannot parse {s!r} as an element of {self.literal}")
            head, tail = s[:cut], s[cut + 2:]
        a = F.parse_element(head) if head else F.zero
        if tail == "":
            b = F.one
        elif tail.startswith("*"):
            b = F.parse_element(tail[1:])
        else:
            raise InvalidParameterError(f"cannot parse {s!r} as an element of {self.literal}")
        return self.make(a, b)


class ProductRing(Ring):
    """Componentwise ring on tuples, indexed lexicographically."""

    kind = "product"

    def __init__(self, components, verify=None):
        components = list(components)
        if not components:
            raise InvalidParameterError("product ring needs at least one component")
        if not all(isinstance(c, Ring) for c in components):
            raise InvalidParameterError("product components must be rings")
        self.components_rings = components
        order = 1
        for c in components:
            order *= c.order
        super().__init__(order, verify=verify)

    def components(self, e):
        out = []
        for ring in reversed(self.components_rings):
            e, x = divmod(e, ring.order)
            out.append(x)
        return tuple(reversed(out))

    def make(self, parts):
        parts = tuple(parts)
        if len(parts) != len(self.components_rings):
            raise InvalidParameterError("component count mismatch")
        e = 0
        for ring, x in zip(self.components_rings, parts):
            ring.check_element(x)
            e = e * ring.order + x
        return e

    @property
    def zero(self):
        return self.make(r.zero for r in self.components_rings)

    @property
    def one(self):
        return self.make(r.one for r in self.components_rings)

    def _componentwise(self, x, y, op):
        xs = self.components(x)
        ys = self.components(y)
        e = 0
        for ring, a, b in zip(self.components_rings, xs, ys):
            e = e * ring.order + op(ring, a, b)
        return e

    def _raw_add(self, x, y):
        return self._componentwise(x, y, lambda r, a, b: r.add(a, b))

    def _raw_mul(self, x, y):
        return self._componentwise(x, y, lambda r, a, b: r.mul(a, b))

    def _raw_neg(self, x):
        e = 0
        for ring, a in zip(self.components_rings, self.components(x)):
            e = e * ring.order + ring.neg(a)
        return e

    @property
    def key(self):
        return ("product",) + tuple(r.key for r in self.components_rings)

    @property
    def literal(self):
        return "x".join(r.literal for r in self.components_rings)

    def render(self, e):
        parts = [r.render(x) for r, x in zip(self.components_rings, self.components(e))]
        return "(" + ",".join(parts) + ")"

    def parse_element(self, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise InvalidParameterError(f"product element must be a tuple, got {s!r}")
        parts = split_top_level(s[1:-1], ",")
        if len(parts) != len(self.components_rings):
            raise InvalidParameterError(f"expected {len(self.components_rings)} components in {s!r}")
        return self.make(r.parse_element(t) for r, t in zip(self.components_rings, parts))


# ---------------------------------------------------------------------------
# constructors (the stable public surface)

def make_zmod(n, verify=None):
    return ZmodRing(n, verify=verify)


def make_galois_field(p, r=1, modulus=None, verify=None):
    return GaloisFieldRing(p, r, modulus=modulus, verify=verify)


def make_v_extension(base, v_square, verify=None):
    return VExtensionRing(base, v_square, verify=verify)


def make_product(components, verify=None):
    return ProductRing(components, verify=verify)


def make_r2(verify=None):
    """The Boolean quaternary ring GF(2)+vGF(2) with v*v = v."""
    return make_v_extension(make_galois_field(2, 1), "v", verify=verify)


# ---------------------------------------------------------------------------
# ring literals:  Z6, GF(2,2;x^2+x+1), GF(2)+vGF(2)[v2=v], Z6xZ4, R2

def split_top_level(s, sep):
    """Split on a separator, ignoring occurrences inside () or []."""
    parts, depth, start, i = [], 0, 0, 0
    while i < len(s):
        ch = s[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and s.startswith(sep, i):
            parts.append(s[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(s[start:])
    return parts


def _find_top_level(s, sub):
    depth = 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and s.startswith(sub, i):
            return i
    return -1


_ZMOD_RE = re.compile(r"^Z(\d+)$")
_VEXT_RE = re.compile(r"^(?P<body>.+)\[v2=(?P<rule>v|1)\]$")


def _parse_single_ring(s):
    if s == "R2":
        return make_r2()
    m = _ZMOD_RE.match(s)
    if m:
        return make_zmod(int(m.group(1)))
    m = _VEXT_RE.match(s)
    if m:
        halves = split_top_level(m.group("body"), "+v")
        if len(halves) != 2 or halves[0] != halves[1]:
            raise InvalidParameterError(f"malformed v-extension literal {s!r}")
        base = _parse_single_ring(halves[0])
        if not isinstance(base, GaloisFieldRing):
            raise InvalidParameterError(f"v-extension base must be a field literal in {s!r}")
        return make_v_extension(base, m.group("rule"))
    if s.startswith("GF(") and s.endswith(")"):
        inner = s[3:-1]
        if ";" in inner:
            args, poly = inner.split(";", 1)
        else:
            args, poly = inner, None
        nums = args.split(",")
        try:
            p = int(nums[0])
            r = int(nums[1]) if len(nums) > 1 else 1
        except (ValueError, IndexError):
            raise InvalidParameterError(f"malformed field literal {s!r}")
        if len(nums) > 2:
            raise InvalidParameterError(f"malformed field literal {s!r}")
        return make_galois_field(p, r, modulus=poly)
    raise InvalidParameterError(f"unrecognized ring literal {s!r}")


def parse_ring(text):
    """Parse a ring literal (product components joined by a top-level ``x``)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise InvalidParameterError("empty ring literal")
    parts = split_top_level(s, "x")
    if len(parts) > 1:
        return make_product([_parse_single_ring(p) for p in parts])
    return _parse_single_ring(parts[0])
