import os
from pathlib import Path

from dotenv import load_dotenv

# -----------------------
# Base Directory
# -----------------------
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")

# -----------------------
# Security
# -----------------------
SECRET_KEY = os.environ.get(
    "SECRET_KEY",
    "django-insecure-dev-key-change-in-production"
)

DEBUG = os.environ.get("DEBUG", "False") == "True"

# -----------------------
# Applications
# -----------------------
INSTALLED_APPS = [
    'invariants',
]

# -----------------------
# Templates (text reports)
# -----------------------
TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# -----------------------
# Database (none, nothing persists)
# -----------------------
DATABASES = {}

# -----------------------
# Invariant computations
# -----------------------
ESR_SEED = int(os.environ.get("ESR_SEED", "0"))

ESR_CAPS = {
    "n": int(os.environ.get("ESR_MAX_VERTICES", "14")),
    "j": int(os.environ.get("ESR_MAX_J", "3")),
}

ESR_LSOP_ATTEMPTS = int(os.environ.get("ESR_LSOP_ATTEMPTS", "32"))
ESR_COEFFICIENT_BOUND = int(os.environ.get("ESR_COEFFICIENT_BOUND", "97"))

ESR_FAST_MOD = os.environ.get("ESR_FAST_MOD", "False") == "True"
ESR_WORKERS = int(os.environ.get("ESR_WORKERS", "1"))
ESR_ASSERT_COMPLEXES = os.environ.get("ESR_ASSERT_COMPLEXES", "True") == "True"

# -----------------------
# Logging
# -----------------------
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'invariants': {
            'handlers': ['console'],
            'level': os.environ.get("ESR_LOG_LEVEL", "WARNING"),
            'propagate': False,
        },
    },
}

# -----------------------
# Internationalization
# -----------------------
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True
