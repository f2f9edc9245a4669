from django.apps import AppConfig


class LSpectrumConfig(AppConfig):
    name = "lspectrum"
    verbose_name = "Lorentz spectrum toolkit"
