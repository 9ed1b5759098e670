from rest_framework import serializers

from supvar.conf import supvar_setting
from supvar.exceptions import InvalidInput
from supvar.fields import FieldSpec
from supvar.homvariety import FAMILY_TAGS, HomParams, TargetFamily
from supvar.models import Certificate


def _values(value):
    """Accept '1,1,1' as well as [1, 1, 1]."""
    if isinstance(value, str):
        value = [item for item in value.replace(' ', '').split(',') if item]
    if not isinstance(value, (list, tuple)):
        raise serializers.ValidationError('Expected a list of field elements.')
    try:
        return [int(item) if not isinstance(item, list) else [int(d) for d in item] for item in value]
    except (TypeError, ValueError):
        raise serializers.ValidationError('Field elements are integers or base-p digit lists.')


class RunConfigSerializer(serializers.Serializer):
    """Field, family and caps shared by every command and endpoint."""

    family = serializers.ChoiceField(
        choices=FAMILY_TAGS, default='Mr1', help_text='Target family tag')
    p = serializers.IntegerField(
        default=3, min_value=3, help_text='Odd prime characteristic')
    e = serializers.IntegerField(
        default=1, min_value=1, help_text='Extension degree, q = p^e')
    q = serializers.IntegerField(
        required=False, min_value=3, help_text='Field order; overrides e when given')
    r = serializers.IntegerField(default=1, min_value=1)
    s = serializers.IntegerField(default=1, min_value=0)
    eta = serializers.IntegerField(
        default=0, min_value=0, help_text='Twist parameter in F_p')
    degree_cap = serializers.IntegerField(required=False, min_value=1)
    budget = serializers.IntegerField(
        required=False, min_value=1, help_text='Search budget; bounds cobar blocks too unless cobar_budget is set')
    cobar_budget = serializers.IntegerField(required=False, min_value=1)
    seed = serializers.IntegerField(required=False, min_value=0)
    threads = serializers.IntegerField(required=False, min_value=1)

    def validate(self, attrs):
        p = attrs['p']
        try:
            if attrs.get('q'):
                spec = FieldSpec.from_order(p, attrs['q'])
            else:
                spec = FieldSpec(p, attrs.get('e', 1))
        except InvalidInput as exc:
            raise serializers.ValidationError({'p': exc.message})
        if attrs.get('eta', 0) >= p:
            raise serializers.ValidationError({'eta': 'η must lie in F_p.'})
        try:
            family = TargetFamily(attrs['family'], attrs['r'], attrs['s'], attrs.get('eta', 0))
        except InvalidInput as exc:
            raise serializers.ValidationError({'family': exc.message})
        attrs.update(e=spec.e, q=spec.order, s=family.s)
        attrs.setdefault('degree_cap', supvar_setting('DEGREE_CAP'))
        attrs.setdefault('seed', supvar_setting('SEED'))
        return attrs


class HomRequestSerializer(RunConfigSerializer):
    enumerate = serializers.BooleanField(
        default=False, help_text='List every field point of Hom(M_r, G)')
    oracle = serializers.BooleanField(
        default=False, help_text='Compare against the generator-image search')
    ell = serializers.IntegerField(
        default=1, min_value=0, help_text='Frobenius twist for the frobenius verb')


class HopfRequestSerializer(RunConfigSerializer):
    kind = serializers.ChoiceField(
        choices=['coordinate', 'group'], default='coordinate')
    export = serializers.BooleanField(
        default=False, help_text='Embed the structure constants')


class CohomologyDimsRequestSerializer(RunConfigSerializer):
    n_max = serializers.IntegerField(default=4, min_value=0, max_value=12)
    method = serializers.ChoiceField(
        choices=['auto', 'cobar', 'resolution'], default='auto')


class RestrictRequestSerializer(RunConfigSerializer):
    params = serializers.JSONField(
        help_text="Homomorphism parameters (μ, a₀.., b), e.g. '1,1,1'")
    cohomology_class = serializers.CharField(
        default='', allow_blank=True,
        help_text='Class to restrict, e.g. w or y*w; blank restricts every generator')

    def validate_params(self, value):
        return _values(value)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        spec = FieldSpec(attrs['p'], attrs['e'])
        family = TargetFamily(attrs['family'], attrs['r'], attrs['s'], attrs['eta'])
        try:
            HomParams.from_values(family, attrs['params'], spec)
        except InvalidInput as exc:
            raise serializers.ValidationError({'params': exc.message})
        return attrs


class SupportRequestSerializer(RunConfigSerializer):
    module = serializers.JSONField(
        default='battery:trivial',
        help_text="'battery:<name>' or a supermatrix tuple {m, n, alpha, beta}")
    nu = serializers.JSONField(
        required=False, help_text='Endomorphism parameters for the equivariance verb')

    def validate_module(self, value):
        if isinstance(value, str):
            if not value.startswith('battery:') or not value[len('battery:'):]:
                raise serializers.ValidationError("Expected 'battery:<name>' or a readable JSON module file.")
            return value
        if isinstance(value, dict) and {'m', 'n', 'alpha', 'beta'} <= set(value):
            return value
        raise serializers.ValidationError('Expected a battery name or a supermatrix tuple.')

    def validate_nu(self, value):
        return _values(value)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['family'] not in ('Mr1', 'Mrs', 'Gar', 'Gaminus') or attrs['r'] != 1:
            raise serializers.ValidationError(
                {'family': 'Supports are computed for height-one families Mr1, Mrs, Gar and Gaminus.'})
        return attrs


class FieldRequestSerializer(RunConfigSerializer):
    elements = serializers.BooleanField(
        default=False, help_text='List every element with its digit encoding')


class CertificateSerializer(serializers.ModelSerializer):
    """Read-only view of a stored run document."""

    username = serializers.CharField(
        source='user.username', read_only=True, default=None)

    class Meta:
        model = Certificate
        fields = [
            'certificate_id', 'username', 'command', 'verb', 'status',
            'exit_code', 'config', 'payload', 'created_at'
        ]
        read_only_fields = fields
