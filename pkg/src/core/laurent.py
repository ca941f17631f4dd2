"""
整系数 Laurent 多项式（变量 A）

括号多项式的取值；系数为任意精度整数，不存储零系数。
"""

from typing import Dict, Iterable, List, Mapping, Tuple, Union

import sympy as sp

A = sp.Symbol("A")


class LaurentPoly:
    """exponent -> coefficient 的不可变映射"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        collected: Dict[int, int] = {}
        for exponent, coefficient in items:
            collected[int(exponent)] = collected.get(int(exponent), 0) + int(coefficient)
        self._terms = {e: c for e, c in collected.items() if c != 0}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def delta(cls) -> "LaurentPoly":
        """圆周因子 -A^2 - A^-2"""
        return cls({2: -1, -2: -1})

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> List[Tuple[int, int]]:
        """(exponent, coefficient)，指数降序"""
        return sorted(self._terms.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        product: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """乘以 A^k"""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        """A -> A^-1"""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*A^{e}" for e, c in self.terms())

    def to_json(self) -> List[List[int]]:
        return [[e, c] for e, c in self.terms()]

    def to_sympy(self) -> sp.Expr:
        return sp.Add(*(c * A ** e for e, c in self._terms.items()))

    @classmethod
    def from_sympy(cls, expr: sp.Expr) -> "LaurentPoly":
        expanded = sp.expand(expr)
        terms = {}
        for term in sp.Add.make_args(expanded):
            coefficient, power = term.as_coeff_exponent(A)
            terms[int(power)] = terms.get(int(power), 0) + int(coefficient)
        return cls(terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()})"

    __str__ = to_text
