import math

from rest_framework import serializers

from .preserver import BASIS


class FiniteFloatField(serializers.FloatField):
    """A float that must be finite on input; ``-0.0`` is written as ``0.0``."""

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            raise serializers.ValidationError("Entries must be finite numbers.")
        return value

    def to_representation(self, value):
        value = float(value)
        if not math.isfinite(value):
            return None
        return value + 0.0


def square_matrix_field(size, **kwargs):
    row = serializers.ListField(child=FiniteFloatField(), min_length=size, max_length=size)
    return serializers.ListField(child=row, min_length=size, max_length=size, **kwargs)


class MatrixFileSerializer(serializers.Serializer):
    matrix = square_matrix_field(3)


class OperatorFileSerializer(serializers.Serializer):
    operator = square_matrix_field(9)
    basis = serializers.ChoiceField(choices=[BASIS])


class PointSerializer(serializers.Serializer):
    value = FiniteFloatField()
    interior = serializers.BooleanField()
    boundary = serializers.BooleanField()

    def validate(self, attrs):
        if not (attrs['interior'] or attrs['boundary']):
            raise serializers.ValidationError("A point needs at least one nature flag.")
        return attrs


class IntervalSerializer(serializers.Serializer):
    lo = FiniteFloatField()
    hi = FiniteFloatField()

    def validate(self, attrs):
        if attrs['lo'] > attrs['hi']:
            raise serializers.ValidationError({"hi": "Interval end lies before its start."})
        return attrs


class SpectrumReportSerializer(serializers.Serializer):
    points = PointSerializer(many=True)
    intervals = IntervalSerializer(many=True)
    infinite = serializers.BooleanField()

    def validate(self, attrs):
        values = [p['value'] for p in attrs['points']]
        if values != sorted(values):
            raise serializers.ValidationError({"points": "Values must be sorted ascending."})
        if attrs['infinite'] != bool(attrs['intervals']):
            raise serializers.ValidationError({"infinite": "Must be true exactly when intervals are present."})
        return attrs


class OrthoQSerializer(serializers.Serializer):
    q = square_matrix_field(2)

    def to_representation(self, instance):
        return super().to_representation({'q': instance.q.tolist()})


class VerdictSerializer(serializers.Serializer):
    is_preserver = serializers.BooleanField()
    reason = serializers.CharField(allow_blank=True)
    witness_label = serializers.CharField(allow_null=True)
    witness = serializers.SerializerMethodField()
    spectra = serializers.SerializerMethodField()
    q_recovered = serializers.SerializerMethodField()

    def get_witness(self, obj):
        if obj.witness is None:
            return None
        return square_matrix_field(3).to_representation(obj.witness.tolist())

    def get_spectra(self, obj):
        if obj.spectra is None:
            return None
        before, after = obj.spectra
        return {
            'input': SpectrumReportSerializer(before).data,
            'image': SpectrumReportSerializer(after).data,
        }

    def get_q_recovered(self, obj):
        if obj.q_recovered is None:
            return None
        return OrthoQSerializer(obj.q_recovered).data['q']


class ComparisonSerializer(serializers.Serializer):
    solver = SpectrumReportSerializer()
    oracle = SpectrumReportSerializer()
    hausdorff_distance = FiniteFloatField(allow_null=True)
    missing = serializers.ListField(child=FiniteFloatField())
    extra = serializers.ListField(child=FiniteFloatField())
    equal = serializers.BooleanField()


class BatteryEntrySerializer(serializers.Serializer):
    label = serializers.CharField()
    matrix = square_matrix_field(3)


class BatterySerializer(serializers.Serializer):
    seed = serializers.IntegerField()
    count = serializers.IntegerField(min_value=30)
    entries = BatteryEntrySerializer(many=True)
