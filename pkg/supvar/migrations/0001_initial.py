# Generated by Django 5.2.5 on 2026-10-18 10:12

import django.db.models.deletion
import uuid
from django.conf import settings
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
        migrations.swappable_dependency(settings.AUTH_USER_MODEL),
    ]

    operations = [
        migrations.CreateModel(
            name='Certificate',
            fields=[
                ('certificate_id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('command', models.CharField(max_length=20)),
                ('verb', models.CharField(max_length=20)),
                ('status', models.CharField(choices=[('pass', 'Pass'), ('fail', 'Check failed'), ('budget', 'Budget or cap exhausted'), ('invalid', 'Invalid input')], max_length=10)),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('config', models.JSONField(default=dict)),
                ('payload', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('user', models.ForeignKey(blank=True, null=True, on_delete=django.db.models.deletion.SET_NULL, related_name='user_certificates', to=settings.AUTH_USER_MODEL)),
            ],
            options={
                'db_table': 'certificate',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'verb'], name='certificate_command_verb_idx'), models.Index(fields=['status'], name='certificate_status_idx')],
            },
        ),
    ]
