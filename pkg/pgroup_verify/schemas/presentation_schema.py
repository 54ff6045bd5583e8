from marshmallow import (
    Schema,
    ValidationError,
    fields,
    post_load,
    pre_dump,
    validate,
    validates_schema,
)

from ..models.presentation import PcPresentation


class CommutatorSchema(Schema):
    """One printed relation [x_i, x_j] = value with 1-based i < j."""

    i = fields.Int(required=True, validate=validate.Range(min=1))
    j = fields.Int(required=True, validate=validate.Range(min=1))
    value = fields.List(
        fields.Int(validate=validate.Range(min=0)),
        required=True,
        metadata={"description": "Exponent vector of the commutator value"},
    )


class PresentationSchema(Schema):
    """JSON form of a class-2 presentation; loads into PcPresentation."""

    p = fields.Int(required=True, validate=validate.Range(min=2))
    orders = fields.List(
        fields.Int(validate=validate.Range(min=1)),
        required=True,
        validate=validate.Length(min=1),
        metadata={"description": "Order exponents e_1..e_d"},
    )
    commutators = fields.List(fields.Nested(CommutatorSchema), load_default=list)

    @validates_schema
    def validate_pairs(self, data, **kwargs):
        d = len(data.get("orders", []))
        seen = set()
        for entry in data.get("commutators", []):
            pair = (entry["i"], entry["j"])
            if not entry["i"] < entry["j"] <= d:
                raise ValidationError(
                    f"commutator pair {pair} must satisfy i < j <= {d}", "commutators"
                )
            if pair in seen:
                raise ValidationError(f"duplicate commutator {pair}", "commutators")
            if len(entry["value"]) != d:
                raise ValidationError(
                    f"value of {pair} needs {d} entries", "commutators"
                )
            seen.add(pair)

    @pre_dump
    def from_model(self, presentation, **kwargs):
        if isinstance(presentation, PcPresentation):
            return presentation.to_dict()
        return presentation

    @post_load
    def make_presentation(self, data, **kwargs) -> PcPresentation:
        printed = {(c["i"], c["j"]): tuple(c["value"]) for c in data["commutators"]}
        return PcPresentation.from_printed(data["p"], tuple(data["orders"]), printed)
