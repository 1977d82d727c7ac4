"""Validation of the merged experiment configuration.

The configuration is the UPPERCASE mapping produced by :func:`circlelab.create_lab`;
keys the schema does not know are ignored.
"""
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from marshmallow import Schema, fields, validate, validates, validates_schema, post_load, ValidationError, EXCLUDE
from marshmallow_enum import EnumField

from .. import default_settings
from ..archimedean import OuterMethod
from ..counting import Engine
from ..densities import DensityMethod
from ..errors import ConfigurationError
from ..nf import NumberField, field_from_poly
from ..polys import PolySystem, BoxRegion, parse_system

_VARIABLE = re.compile(r'x(\d+)')


class FractionField(fields.Field):
    """A rational number written as an int, a float or a string such as ``'-1/2'``."""

    def _deserialize(self, value, attr, data, **kwargs) -> Fraction:
        if isinstance(value, bool):
            raise ValidationError('not a rational number')
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError('{!r} is not a rational number'.format(value))

    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else str(value)


def _positive(key: str):
    return fields.Integer(data_key=key, load_default=getattr(default_settings, key), validate=validate.Range(min=1))


@dataclass
class ExperimentConfig:
    """A validated experiment.

    Attributes:
        field_poly (List[int]): Defining polynomial of K, leading coefficient first.
        field_basis: Z-basis of O_K in power-basis coordinates, when Z[theta] is not maximal.
        field_ideal: Generators of the lattice n in O_K coordinates.
        system (str): Polynomials separated by ``;``.
        box: One (low, high) pair per integer coordinate; the cube [-1, 1]^{ns} when empty.
        P_values (List[Fraction]): Scales of the counting sweep, ascending.
        B_overrides (Dict[int, int]): Asserted B_d per degree.
        alpha_points: Flat alpha coordinates examined by the sums subcommand.
    """
    field_poly: List[int]
    system: str
    P_values: List[Fraction]
    field_basis: Optional[List[List[Fraction]]] = None
    field_ideal: Optional[List[List[int]]] = None
    degree_profile: Optional[List[int]] = None
    nvars: Optional[int] = None
    box: Optional[List[Tuple[Fraction, Fraction]]] = None
    engine: Engine = Engine.Auto
    split: Optional[List[int]] = None
    B_overrides: Dict[int, int] = dataclass_field(default_factory=dict)
    e_exponent: float = 0.0
    series_H: int = default_settings.SERIES_H
    series_prime_cutoff: int = default_settings.SERIES_PRIME_CUTOFF
    series_depth: int = default_settings.SERIES_DEPTH
    density_method: DensityMethod = DensityMethod.Auto
    integral_H: Fraction = Fraction(default_settings.INTEGRAL_H)
    outer_method: OuterMethod = OuterMethod.Quadrature
    quadrature_nodes: int = default_settings.QUADRATURE_NODES
    density_epsilon: Fraction = Fraction(str(default_settings.DENSITY_EPSILON))
    density_samples: int = default_settings.DENSITY_SAMPLES
    alpha_points: List[List[Fraction]] = dataclass_field(default_factory=list)
    minor_arc_grid: int = default_settings.MINOR_ARC_GRID
    major_arc_beta: Optional[List[Fraction]] = None
    seed: int = default_settings.SEED
    threads: int = default_settings.THREADS
    output_dir: str = default_settings.OUTPUT_DIR
    enumeration_budget: int = default_settings.ENUMERATION_BUDGET
    residue_budget: int = default_settings.RESIDUE_BUDGET
    search_budget: int = default_settings.SEARCH_BUDGET
    chunk_size: int = default_settings.CHUNK_SIZE

    def build_field(self) -> NumberField:
        return field_from_poly(self.field_poly, ideal_gens=self.field_ideal, basis=self.field_basis)

    def build_system(self, field: NumberField) -> PolySystem:
        return parse_system(self.system, field, self.degree_profile, self.nvars)

    def build_box(self, field: NumberField, system: PolySystem) -> BoxRegion:
        if not self.box:
            return BoxRegion.cube(field.n * system.s)
        if len(self.box) != field.n * system.s:
            raise ConfigurationError('BOX has {} intervals, expected n*s = {}'.format(len(self.box),
                                                                                    field.n * system.s),
                                     {'BOX': ['wrong number of intervals']})
        return BoxRegion(tuple(self.box))

    @property
    def scales(self) -> List[Any]:
        """P values as ints where they are integral."""
        return [int(P) if P.denominator == 1 else P for P in self.P_values]


class ExperimentConfigSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    field_poly = fields.List(fields.Integer(), data_key='FIELD_POLY', load_default=lambda: [1, -1],
                             validate=validate.Length(min=2))
    field_basis = fields.List(fields.List(FractionField()), data_key='FIELD_BASIS', load_default=None,
                              allow_none=True)
    field_ideal = fields.List(fields.List(fields.Integer()), data_key='FIELD_IDEAL', load_default=None,
                              allow_none=True)
    system = fields.String(data_key='SYSTEM', required=True, validate=validate.Length(min=1))
    degree_profile = fields.List(fields.Integer(validate=validate.Range(min=0)), data_key='DEGREE_PROFILE',
                                 load_default=None, allow_none=True)
    nvars = fields.Integer(data_key='NVARS', load_default=None, allow_none=True, validate=validate.Range(min=1))
    box = fields.List(fields.Tuple((FractionField(), FractionField())), data_key='BOX', load_default=None,
                      allow_none=True)
    P_values = fields.List(FractionField(), data_key='P_VALUES', required=True, validate=validate.Length(min=1))
    engine = EnumField(Engine, by_value=True, data_key='ENGINE', load_default=Engine.Auto)
    split = fields.List(fields.Integer(), data_key='SPLIT', load_default=None, allow_none=True)
    B_overrides = fields.Dict(keys=fields.Integer(validate=validate.Range(min=1)),
                              values=fields.Integer(validate=validate.Range(min=-1)),
                              data_key='B_OVERRIDES', load_default=dict)
    e_exponent = fields.Float(data_key='E_EXPONENT', load_default=float(default_settings.E_EXPONENT))
    series_H = _positive('SERIES_H')
    series_prime_cutoff = fields.Integer(data_key='SERIES_PRIME_CUTOFF',
                                         load_default=default_settings.SERIES_PRIME_CUTOFF,
                                         validate=validate.Range(min=2))
    series_depth = _positive('SERIES_DEPTH')
    density_method = EnumField(DensityMethod, by_value=True, data_key='DENSITY_METHOD',
                               load_default=DensityMethod.Auto)
    integral_H = FractionField(data_key='INTEGRAL_H', load_default=Fraction(default_settings.INTEGRAL_H))
    outer_method = EnumField(OuterMethod, by_value=True, data_key='OUTER_METHOD',
                             load_default=OuterMethod.Quadrature)
    quadrature_nodes = _positive('QUADRATURE_NODES')
    density_epsilon = FractionField(data_key='DENSITY_EPSILON',
                                    load_default=Fraction(str(default_settings.DENSITY_EPSILON)))
    density_samples = _positive('DENSITY_SAMPLES')
    alpha_points = fields.List(fields.List(FractionField()), data_key='ALPHA_POINTS', load_default=list)
    minor_arc_grid = _positive('MINOR_ARC_GRID')
    major_arc_beta = fields.List(FractionField(), data_key='MAJOR_ARC_BETA', load_default=None, allow_none=True)
    seed = fields.Integer(data_key='SEED', load_default=default_settings.SEED, validate=validate.Range(min=0))
    threads = _positive('THREADS')
    output_dir = fields.String(data_key='OUTPUT_DIR', load_default=default_settings.OUTPUT_DIR)
    enumeration_budget = _positive('ENUMERATION_BUDGET')
    residue_budget = _positive('RESIDUE_BUDGET')
    search_budget = _positive('SEARCH_BUDGET')
    chunk_size = _positive('CHUNK_SIZE')

    @validates('P_values')
    def validate_P_values(self, value: List[Fraction], **kwargs):
        if any(P < 1 for P in value):
            raise ValidationError('every P must be at least 1')
        if list(value) != sorted(value):
            raise ValidationError('P values must be sorted ascending')

    @validates('integral_H')
    def validate_integral_H(self, value: Fraction, **kwargs):
        if value <= 0:
            raise ValidationError('INTEGRAL_H must be positive')

    @validates('density_epsilon')
    def validate_density_epsilon(self, value: Fraction, **kwargs):
        if value <= 0:
            raise ValidationError('DENSITY_EPSILON must be positive')

    @validates('box')
    def validate_box(self, value, **kwargs):
        for low, high in value or []:
            if low > high or low < -1 or high > 1:
                raise ValidationError('interval [{}, {}] must satisfy -1 <= low <= high <= 1'.format(low, high))

    @validates_schema
    def validate_split(self, data: Dict[str, Any], **kwargs):
        split = data.get('split')
        if not split or 'system' not in data:
            return
        s = max([int(v) for v in _VARIABLE.findall(data['system'])] + [data.get('nvars') or 0])
        if any(v < 1 or v > s for v in split):
            raise ValidationError('split variables must lie in 1..{}'.format(s), 'SPLIT')

    @post_load
    def make_config(self, data: Dict[str, Any], **kwargs) -> ExperimentConfig:
        return ExperimentConfig(**data)


def load_experiment(config: Mapping[str, Any]) -> ExperimentConfig:
    """Validate a configuration mapping.

    Raises:
        ConfigurationError: with marshmallow's messages keyed by configuration key.
    """
    try:
        return ExperimentConfigSchema().load(dict(config))
    except ValidationError as e:
        raise ConfigurationError('invalid experiment configuration: {}'.format(e.messages), e.messages)
