import uuid
from django.db import models
from django.contrib.auth.models import User


class Certificate(models.Model):
    """A stored run document: the validated config plus the pass/fail payload."""

    STATUS_CHOICES = [
        ('pass', 'Pass'),
        ('fail', 'Check failed'),
        ('budget', 'Budget or cap exhausted'),
        ('invalid', 'Invalid input'),
    ]

    certificate_id = models.UUIDField(
        primary_key=True, default=uuid.uuid4, editable=False)
    user = models.ForeignKey(
        User, on_delete=models.SET_NULL, null=True, blank=True,
        related_name='user_certificates')
    command = models.CharField(max_length=20)
    verb = models.CharField(max_length=20)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES)
    exit_code = models.PositiveSmallIntegerField(default=0)
    config = models.JSONField(default=dict)
    payload = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = "certificate"
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'verb'], name='certificate_command_verb_idx'),
            models.Index(fields=['status'], name='certificate_status_idx'),
        ]

    def __str__(self):
        return f"{self.command} {self.verb}: {self.status}"

    @property
    def family_label(self):
        family = self.config.get('family')
        if not family:
            return ''
        return f"{family} r={self.config.get('r')} s={self.config.get('s')}"
