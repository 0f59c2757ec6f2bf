"""
Django settings for the fracdim2d test project.

Only what the app and its test suite need: no database models,
no web front end.
"""
import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent

SECRET_KEY = 'fracdim2d-tests-not-a-secret'

DEBUG = True

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "fracdim2d",
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'fracdim2d': {
            'handlers': ['console'],
            'level': os.environ.get('FRACDIM2D_LOG_LEVEL', 'WARNING'),
        },
    },
}

# fracdim2d
# FRACDIM2D_THREADS = 0
# FRACDIM2D_PANELS = 128
