"""
Django settings for the hyperlab project.

Started from 'django-admin startproject' using Django 5.2.8. The project has no
HTTP surface and no database; it runs through management commands only.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "django-insecure-hyperlab-local-only")

DEBUG = os.environ.get("DJANGO_DEBUG", "") == "1"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "hyperlab",
]

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            # Reports are plain text.
            "autoescape": False,
        },
    },
]


# Database
# Nothing is persisted; tests use SimpleTestCase.

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "compact": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "compact",
        },
    },
    "loggers": {
        "hyperlab": {
            "handlers": ["console"],
            "level": os.environ.get("HYPERLAB_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}


# Hyperlab engine
# Defaults live in hyperlab.conf; anything set here overrides them.

HYPERLAB_MAX_GROUND = 16
HYPERLAB_PRODUCT_LIMIT = 4096
HYPERLAB_DERIVE_MAX_GROUND = 12
HYPERLAB_WEIGHT_CAP = 20
HYPERLAB_MAX_SEARCH_POINTS = 4
HYPERLAB_SEED = os.environ.get("HYPERLAB_SEED") or None
HYPERLAB_DEFAULT_SEED = 1729
HYPERLAB_RANDOM_SUBBASES = 40
HYPERLAB_INTERVAL_SAMPLES = 200
