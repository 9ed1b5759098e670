from rest_framework import status, serializers
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema, OpenApiResponse, inline_serializer

from supvar import services
from supvar.serializers import (
    CohomologyDimsRequestSerializer,
    HomRequestSerializer,
    RestrictRequestSerializer,
    SupportRequestSerializer,
)

HTTP_STATUS = {
    'pass': status.HTTP_200_OK,
    'fail': status.HTTP_422_UNPROCESSABLE_ENTITY,
    'budget': status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
    'invalid': status.HTTP_400_BAD_REQUEST,
}

RunDocument = inline_serializer(
    name='RunDocument',
    fields={
        'command': serializers.CharField(),
        'verb': serializers.CharField(),
        'status': serializers.ChoiceField(choices=list(HTTP_STATUS)),
        'exit_code': serializers.IntegerField(),
        'config': serializers.DictField(),
        'exercises': serializers.ListField(child=serializers.CharField()),
        'result': serializers.DictField(required=False),
        'error': serializers.DictField(required=False),
    }
)

RUN_RESPONSES = {
    200: OpenApiResponse(response=RunDocument, description='All checks passed'),
    400: OpenApiResponse(response=RunDocument, description='Invalid configuration'),
    413: OpenApiResponse(response=RunDocument, description='Budget or degree cap exhausted'),
    422: OpenApiResponse(response=RunDocument, description='A mathematical check failed; see witness'),
}


def _respond(request, command, verb):
    """Run the verb for the caller, store the certificate and map its status to HTTP."""
    document, _ = services.run(
        command, verb, request.data, user=request.user, save=True)
    return Response(document, status=HTTP_STATUS[document['status']])


@extend_schema(
    tags=['Homomorphisms'],
    summary='Classify homomorphisms',
    description='Constraint description of Hom(M_r, G), its field points, and optionally the search oracle comparison.',
    request=HomRequestSerializer,
    responses=RUN_RESPONSES,
)
@api_view(['POST'])
@permission_classes([IsAuthenticated])
def hom_classify_view(request):
    return _respond(request, 'hom', 'classify')


@extend_schema(
    tags=['Cohomology'],
    summary='Low-degree cohomology dimensions',
    description='Compare computed dim H^n(G, k) with the Hilbert function of the presented cohomology ring.',
    request=CohomologyDimsRequestSerializer,
    responses=RUN_RESPONSES,
)
@api_view(['POST'])
@permission_classes([IsAuthenticated])
def cohomology_dims_view(request):
    return _respond(request, 'cohomology', 'dims')


@extend_schema(
    tags=['Cohomology'],
    summary='Restrict a cohomology class',
    description='Pull a class of H(G, k) back along the homomorphism with the given parameters.',
    request=RestrictRequestSerializer,
    responses=RUN_RESPONSES,
)
@api_view(['POST'])
@permission_classes([IsAuthenticated])
def cohomology_restrict_view(request):
    return _respond(request, 'cohomology', 'restrict')


@extend_schema(
    tags=['Supports'],
    summary='Compare supports',
    description='Image of the support set under the point map against the zero set of the annihilator ideal.',
    request=SupportRequestSerializer,
    responses=RUN_RESPONSES,
)
@api_view(['POST'])
@permission_classes([IsAuthenticated])
def support_compare_view(request):
    return _respond(request, 'support', 'compare')
