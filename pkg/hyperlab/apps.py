from django.apps import AppConfig


class HyperlabConfig(AppConfig):
    name = "hyperlab"
    verbose_name = "Hyperspace topology lab"
