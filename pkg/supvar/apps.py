from django.apps import AppConfig


class SupvarConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'supvar'
    verbose_name = 'Supergroup support varieties'
