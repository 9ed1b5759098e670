from django.db.models import Count
from rest_framework import viewsets, filters
from rest_framework.decorators import action
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema, extend_schema_view, OpenApiParameter

from supvar.models import Certificate
from supvar.serializers import CertificateSerializer


@extend_schema_view(
    list=extend_schema(
        tags=['Certificates'],
        summary='List certificates',
        description='Stored run documents of the authenticated user, newest first.',
        parameters=[
            OpenApiParameter(
                name='command', description='Filter by command (hom, hopf, cohomology, support, field)', required=False, type=str),
            OpenApiParameter(
                name='status', description='Filter by status (pass, fail, budget, invalid)', required=False, type=str),
        ]
    ),
    retrieve=extend_schema(
        tags=['Certificates'],
        summary='Get certificate',
        description='Retrieve one stored run document by ID.'
    ),
)
class CertificateViewSet(viewsets.ReadOnlyModelViewSet):
    """
    Read-only access to the certificates stored by the run endpoints.
    """
    serializer_class = CertificateSerializer
    permission_classes = [IsAuthenticated]
    filter_backends = [filters.OrderingFilter, filters.SearchFilter]
    ordering_fields = ['created_at', 'command', 'status']
    ordering = ['-created_at']
    search_fields = ['command', 'verb']

    def get_queryset(self):
        queryset = Certificate.objects.filter(user=self.request.user)

        command = self.request.query_params.get('command', None)
        if command:
            queryset = queryset.filter(command=command)

        status = self.request.query_params.get('status', None)
        if status in dict(Certificate.STATUS_CHOICES):
            queryset = queryset.filter(status=status)

        return queryset

    @extend_schema(
        tags=['Certificates'],
        summary='Certificate summary',
        description='Counts of stored certificates per command and status.'
    )
    @action(detail=False, methods=['get'])
    def summary(self, request):
        rows = self.get_queryset().order_by().values(
            'command', 'status').annotate(count=Count('certificate_id'))
        summary = {}
        for row in rows:
            summary.setdefault(row['command'], {})[row['status']] = row['count']
        return Response({'total': sum(r['count'] for r in rows), 'by_command': summary})
