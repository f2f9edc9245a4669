"""
Django settings for project_config project.

The project has no database and no HTTP surface: it hosts the ``lspectrum``
app, whose solvers, oracle and preserver checks are driven through the
``lspectrum`` management command.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from .env file in the BASE_DIR
load_dotenv(os.path.join(BASE_DIR, '.env'))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'lspectrum-local-only')

DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 't')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'lspectrum',
]

# No models live in this project, so no database is configured.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Logging: everything goes to stderr, stdout carries the command's JSON report.

LOG_LEVEL = os.getenv('LSPECTRUM_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'lspectrum': {
            'handlers': ['stderr'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Numerical defaults of the toolkit. Not read from the environment: output
# depends on inputs and command flags only.

LSPECTRUM = {
    'TOL': 1e-8,
    'VERIFY_TOL': 1e-7,
    'STRICT_TOL': 1e-10,
    'DEDUP_TOL': 1e-8,
    'DEGENERATE_INTERVAL': 1e-10,
    'ROOT_IMAG_GATE': 1e-4,
    'NEWTON_STEPS': 2,
    'THETA_STEPS': 100000,
    'RESIDUAL_TOL': 1e-9,
    'CLUSTER_GAP': 1e-6,
    'EIGVEC_CUTOFF': 1e-7,
    'BISECTION_STEPS': 40,
    'BATTERY_COUNT': 60,
    'SHOW_PROGRESS': os.getenv('LSPECTRUM_PROGRESS', 'False').lower() in ('true', '1', 't'),
}
