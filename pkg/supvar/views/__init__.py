from supvar.views.certificates import CertificateViewSet
from supvar.views.runs import (
    hom_classify_view,
    cohomology_dims_view,
    cohomology_restrict_view,
    support_compare_view
)

__all__ = [
    'CertificateViewSet',
    'hom_classify_view',
    'cohomology_dims_view',
    'cohomology_restrict_view',
    'support_compare_view',
]
