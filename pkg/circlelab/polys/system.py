import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor

from ..nf import NumberField, FieldElement, IdealLattice, ideal_to_omega
from ..nf.hnf import reduce_vector
from .errors import SystemSyntaxError, DegreeMismatchError, EmptyDegreeSlotError, ZeroLeadingFormError, \
    DimensionMismatchError
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

_BRACKET = re.compile(r'\[([^\]]*)\]')
_VARIABLE = re.compile(r'\bx(\d+)\b')
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


@dataclass(frozen=True)
class PolySystem:
    """The polynomials G_{d,i} ordered by degree, then by input order.

    Attributes:
        s (int): Number of variables.
        polys (Tuple[Polynomial, ...]): The polynomials.
    """
    s: int
    polys: Tuple[Polynomial, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    @property
    def D(self) -> int:
        return max(self.degrees)

    @property
    def degree_profile(self) -> Tuple[int, ...]:
        """(t_1, ..., t_D)."""
        return tuple(self.t(d) for d in range(1, self.D + 1))

    def t(self, d: int) -> int:
        return sum(1 for deg in self.degrees if deg == d)

    @property
    def delta(self) -> Tuple[int, ...]:
        """Degrees that occur."""
        return tuple(sorted(set(self.degrees)))

    @property
    def T(self) -> int:
        return len(self.polys)

    def calD(self, d: int) -> int:
        """t_1 + 2 t_2 + ... + d t_d."""
        return sum(k * self.t(k) for k in range(1, d + 1))

    @property
    def calD_total(self) -> int:
        return self.calD(self.D)

    @property
    def entries(self) -> List[Tuple[int, int, Polynomial]]:
        """(d, i, G_{d,i}) with i counted from 1 inside each degree."""
        seen = {}  # type: Dict[int, int]
        result = []
        for p in self.polys:
            seen[p.degree] = seen.get(p.degree, 0) + 1
            result.append((p.degree, seen[p.degree], p))
        return result

    @property
    def leading_forms(self) -> Tuple[Polynomial, ...]:
        return tuple(p.leading_form for p in self.polys)

    def forms_of_degree(self, d: int) -> Tuple[Polynomial, ...]:
        return tuple(p.leading_form for p in self.polys if p.degree == d)


def parse_system(text: str, field: Optional[NumberField] = None,
                 degree_profile: Union[None, int, Sequence[int]] = None,
                 nvars: Optional[int] = None) -> PolySystem:
    """Parse polynomials separated by ``;``.

    Variables are ``x1 .. xs``. A coefficient is an integer or a bracketed vector
    ``[a,b,...]`` of coordinates with respect to the integral basis of O_K.

    Args:
        text (str): The system.
        field (NumberField): Coefficient field, Q when omitted.
        degree_profile: Declared top degree D, or declared (t_1, ..., t_D).
        nvars (int): Declared number of variables.

    Raises:
        SystemSyntaxError: unparsable text or coefficients outside O_K.
        ZeroLeadingFormError: a polynomial is constant.
        DegreeMismatchError: parsed degrees differ from `degree_profile`.
        EmptyDegreeSlotError: declared t_D is 0.
    """
    if field is None:
        from ..nf import field_from_poly
        field = field_from_poly([1, -1])

    pieces = [piece.strip() for piece in text.split(';') if piece.strip()]
    if not pieces:
        raise SystemSyntaxError('system text contains no polynomial')

    indices = [int(v) for v in _VARIABLE.findall(text)]
    if any(v < 1 for v in indices):
        raise SystemSyntaxError('variables are numbered from x1')
    s = max(indices, default=0)
    if nvars is not None:
        if nvars < s:
            raise SystemSyntaxError('system uses x{} but declares {} variables'.format(s, nvars))
        s = nvars
    if s == 0:
        raise SystemSyntaxError('system has no variables')

    xs = sympy.symbols(' '.join('x{}'.format(i) for i in range(1, s + 1)), seq=True)
    polys = [_parse_polynomial(piece, field, xs) for piece in pieces]
    order = sorted(range(len(polys)), key=lambda k: polys[k].degree)
    system = PolySystem(s, tuple(polys[k] for k in order))
    _check_profile(system, degree_profile)
    logger.debug('Parsed system with s=%d, profile=%s', s, system.degree_profile)
    return system


def _parse_polynomial(source: str, field: NumberField, xs) -> Polynomial:
    constants = []  # type: List[FieldElement]

    def replace(match) -> str:
        try:
            values = [int(v) for v in match.group(1).split(',')]
        except ValueError:
            raise SystemSyntaxError('bad coefficient vector [{}]'.format(match.group(1)))
        if len(values) != field.n:
            raise SystemSyntaxError('coefficient vector [{}] needs {} entries'.format(match.group(1), field.n))
        constants.append(field.from_order(values))
        return '(c_{})'.format(len(constants) - 1)

    expression = _BRACKET.sub(replace, source)
    cs = sympy.symbols(' '.join('c_{}'.format(k) for k in range(len(constants))), seq=True) if constants else ()
    local = {str(x): x for x in xs}
    local.update({str(c): c for c in cs})
    try:
        expr = parse_expr(expression, local_dict=local, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise SystemSyntaxError('cannot parse "{}": {}'.format(source, e))

    unknown = expr.free_symbols - set(xs) - set(cs)
    if unknown:
        raise SystemSyntaxError('unknown symbols {} in "{}"'.format(sorted(map(str, unknown)), source))

    poly = sympy.Poly(sympy.expand(expr), *xs)
    terms = {}
    for monom, coeff in poly.terms():
        value = _coefficient(coeff, cs, constants, field)
        if not all(c.denominator == 1 for c in field.to_order(value)):
            raise SystemSyntaxError('coefficient {} of "{}" is not in O_K'.format(coeff, source))
        terms[tuple(int(e) for e in monom)] = value

    result = Polynomial.from_dict(len(xs), terms)
    if result.degree < 1:
        raise ZeroLeadingFormError('"{}" has no nonzero form of positive degree'.format(source))
    return result


def _coefficient(coeff, cs, constants, field: NumberField) -> FieldElement:
    if not cs:
        r = sympy.Rational(coeff)
        return field.one.scale(Fraction(int(r.p), int(r.q)))

    total = field.zero
    for cmonom, rational in sympy.Poly(coeff, *cs).terms():
        r = sympy.Rational(rational)
        value = field.one.scale(Fraction(int(r.p), int(r.q)))
        for k, e in enumerate(cmonom):
            for _ in range(int(e)):
                value = field.mul(value, constants[k])
        total = total + value
    return total


def _check_profile(system: PolySystem, declared) -> None:
    if declared is None:
        return
    found = system.degree_profile
    if isinstance(declared, int):
        if declared != system.D:
            raise DegreeMismatchError(declared, found)
        return
    declared = tuple(int(t) for t in declared)
    if not declared or declared[-1] == 0:
        raise EmptyDegreeSlotError('declared profile {} has t_D = 0'.format(declared))
    if declared != found:
        raise DegreeMismatchError(declared, found)


def evaluate(field: NumberField, system: PolySystem, point: Sequence,
             modulus: Optional[IdealLattice] = None) -> List[FieldElement]:
    """Exact values G_{d,i}(x), optionally reduced modulo a n.

    Args:
        field (NumberField): The field.
        system (PolySystem): The system.
        point: s field elements, or s integers when K = Q.
        modulus (IdealLattice): Reduce values to canonical representatives modulo a n.

    Raises:
        DimensionMismatchError: point does not have s coordinates.
    """
    if len(point) != system.s:
        raise DimensionMismatchError('point has {} coordinates, system has {} variables'.format(len(point), system.s))
    point = [x if isinstance(x, FieldElement) else field.one.scale(x) for x in point]
    if any(x.n != field.n for x in point):
        raise DimensionMismatchError('point coordinates must have {} entries'.format(field.n))

    values = [p.evaluate(field, point) for p in system.polys]
    if modulus is not None:
        lattice = ideal_to_omega(field, modulus)
        values = [FieldElement(reduce_vector(lattice, v.coords)) for v in values]
    return values
