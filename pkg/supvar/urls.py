from django.urls import path, include
from rest_framework.routers import DefaultRouter
from supvar.views import (
    CertificateViewSet,
    hom_classify_view,
    cohomology_dims_view,
    cohomology_restrict_view,
    support_compare_view
)

router = DefaultRouter()

router.register(r'certificates', CertificateViewSet, basename='certificate')

app_name = 'supvar'

urlpatterns = [
    path('hom/classify/', hom_classify_view, name='hom-classify'),
    path('cohomology/dims/', cohomology_dims_view, name='cohomology-dims'),
    path('cohomology/restrict/', cohomology_restrict_view,
         name='cohomology-restrict'),
    path('support/compare/', support_compare_view, name='support-compare'),
    path('', include(router.urls)),
]
