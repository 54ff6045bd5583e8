from marshmallow import Schema, fields, pre_dump

from ..models.report import Report
from ..models.subgroup import SubgroupRelation
from ..models.verdict import VerdictKind
from .presentation_schema import PresentationSchema

SCHEMA_VERSION = 1


class PrimePowerField(fields.Field):
    """Dumps a (p, k) pair as {"p": p, "exponent": k}; None stays None."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        p, exponent = value
        return {"p": p, "exponent": exponent}


class SectionSchema(Schema):
    orders = fields.List(fields.Int())
    exponents = fields.List(fields.Int())
    rank = fields.Int()
    exponent = fields.Int()
    elementary = fields.Bool(attribute="is_elementary")


class StructureSchema(Schema):
    order = PrimePowerField()
    exponent = fields.Int(allow_none=True)
    sections = fields.Dict(keys=fields.Str(), values=fields.Nested(SectionSchema))
    relations = fields.Dict(
        keys=fields.Str(), values=fields.Enum(SubgroupRelation, by_value=True)
    )
    purely_nonabelian = fields.Bool(allow_none=True)

    @pre_dump
    def with_order(self, summary, **kwargs):
        return {
            "order": (summary.p, summary.order_exponent),
            "exponent": summary.exponent,
            "sections": summary.sections,
            "relations": summary.relations,
            "purely_nonabelian": summary.purely_nonabelian,
        }


class AdneyYenSchema(Schema):
    a = fields.Int()
    b = fields.Int()
    c = fields.Int()
    d = fields.Int()
    r_equals_k = fields.Bool()
    cyclic_condition = fields.Bool()
    cyclic_witness = fields.List(fields.Int(), allow_none=True)
    abelian = fields.Bool()


class JafariTwoSchema(Schema):
    satisfied = fields.List(fields.Int())
    condition = fields.Int(allow_none=True)
    witness = fields.List(fields.Int(), allow_none=True)


class EarnleySchema(Schema):
    applicable = fields.Bool()
    exponent = fields.Int()
    nonabelian = fields.Bool()


class DichotomySchema(Schema):
    branch1 = fields.Bool()
    branch2 = fields.Bool()
    exponent = fields.Int()
    exponent_is_p_squared = fields.Bool()
    exponent_balance = fields.List(fields.Int())
    violated = fields.Bool()


class SanitySchema(Schema):
    trials = fields.Int()
    non_commuting = fields.Int()
    not_order_p = fields.Int()
    skipped = fields.Int()


class CentralCountSchema(Schema):
    maps = fields.Int()
    automorphisms = fields.Int()
    all_automorphisms = fields.Bool()


class CriteriaSchema(Schema):
    autcent_order = PrimePowerField()
    adney_yen = fields.Nested(AdneyYenSchema, allow_none=True)
    jafari_odd = fields.Bool(allow_none=True)
    jafari_two = fields.Nested(JafariTwoSchema, allow_none=True)
    earnley = fields.Nested(EarnleySchema, allow_none=True)
    dichotomy = fields.Nested(DichotomySchema, allow_none=True)
    sanity = fields.Nested(SanitySchema, allow_none=True)
    central_count = fields.Nested(CentralCountSchema, allow_none=True)


class StatsSchema(Schema):
    nodes = fields.Int()
    equation_prunes = fields.Int()
    invertibility_prunes = fields.Int()
    central_prunes = fields.Int()
    level0_patterns = fields.Int()
    wall_seconds = fields.Float()


class WitnessSchema(Schema):
    values = fields.List(fields.Int())
    images = fields.List(fields.List(fields.Int()))
    central_parts = fields.List(fields.List(fields.Int()))


class VerdictSchema(Schema):
    kind = fields.Enum(VerdictKind, by_value=True)
    reason = fields.Str()
    surviving_patterns = fields.Int()
    stats = fields.Nested(StatsSchema)
    witness = fields.Nested(WitnessSchema, allow_none=True)


class OracleSchema(Schema):
    automorphisms = fields.Int()
    central = fields.Int()
    all_central = fields.Bool()


class CheckSchema(Schema):
    claim = fields.Str()
    check = fields.Str()
    passed = fields.Bool(allow_none=True)
    detail = fields.Str()


class ReportSchema(Schema):
    """
    JSON form of a Report.

    Without a timestamp the output is byte-for-byte reproducible, so the
    solver's wall-clock time is left out as well.
    """

    schema_version = fields.Int()
    command = fields.Str()
    label = fields.Str()
    presentation = fields.Nested(PresentationSchema)
    structure = fields.Nested(StructureSchema, allow_none=True)
    criteria = fields.Nested(CriteriaSchema)
    verdict = fields.Raw(allow_none=True)
    oracle = fields.Nested(OracleSchema, allow_none=True)
    aut_order = PrimePowerField()
    aut_abelian = fields.Bool(allow_none=True)
    checks = fields.List(fields.Nested(CheckSchema))
    exit_code = fields.Int()
    generated_at = fields.DateTime(allow_none=True)

    @pre_dump
    def flatten(self, report: Report, **kwargs):
        p = report.presentation.p
        criteria = report.criteria
        verdict = None
        if report.verdict is not None:
            verdict = VerdictSchema().dump(report.verdict)
            if report.generated_at is None:
                verdict["stats"].pop("wall_seconds", None)
        return {
            "schema_version": SCHEMA_VERSION,
            "command": report.command,
            "label": report.label,
            "presentation": report.presentation,
            "structure": report.structure,
            "criteria": {
                "autcent_order": (
                    (p, criteria.autcent_order)
                    if criteria.autcent_order is not None
                    else None
                ),
                "adney_yen": criteria.adney_yen,
                "jafari_odd": criteria.jafari_odd,
                "jafari_two": criteria.jafari_two,
                "earnley": criteria.earnley,
                "dichotomy": criteria.dichotomy,
                "sanity": criteria.sanity,
                "central_count": criteria.central_count,
            },
            "verdict": verdict,
            "oracle": report.oracle,
            "aut_order": (p, report.aut_order) if report.aut_order is not None else None,
            "aut_abelian": report.aut_abelian,
            "checks": report.checks,
            "exit_code": report.exit_code,
            "generated_at": report.generated_at,
        }
