from django.contrib import admin
from .models import Certificate


@admin.register(Certificate)
class CertificateAdmin(admin.ModelAdmin):
    list_display = ['command', 'verb', 'status',
                    'exit_code', 'family_label', 'user', 'created_at']
    list_filter = ['command', 'verb', 'status']
    readonly_fields = ['certificate_id', 'config', 'payload', 'created_at']
