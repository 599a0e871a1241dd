"""
Django settings for the coherent_thermo project.

The project has no web surface: Django provides the management-command
CLI, settings, logging configuration, templates for the human-readable
output format, and the test runner.

Values are read from the environment (or a ``.env`` file) through
python-decouple. See ``.env.example`` for the full list.
"""

from pathlib import Path

from decouple import Choices, config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Nothing is signed or served; the key only satisfies Django's checks.
SECRET_KEY = config('DJANGO_SECRET_KEY', default='coherent-thermo-insecure-local-key')

DEBUG = config('DJANGO_DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# =============================================================================
# APPLICATION DEFINITION
# =============================================================================

INSTALLED_APPS = [
    'constants',
    'coherent',
    'thermo',
    'kgf_field',
    'blackhole',
    'verification',
    'cli',
]

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

# Persistent storage is out of scope; tests use SimpleTestCase.
DATABASES = {}

USE_I18N = False
USE_TZ = True
TIME_ZONE = 'UTC'


# =============================================================================
# PHYSICS DEFAULTS
# =============================================================================

# Unit system used when --units is not given.
DEFAULT_UNIT_SYSTEM = config(
    'COHTHERM_UNITS',
    default='si',
    cast=Choices(['si', 'natural']),
)

# Worker threads used by the sweep command. Output order never depends on it.
SWEEP_WORKERS = config('COHTHERM_SWEEP_WORKERS', default=4, cast=int)

# Probability mass allowed beyond the Fock truncation index.
FOCK_TOLERANCE = config('COHTHERM_FOCK_TOL', default=1e-12, cast=float)

# Relative tolerance of the effective-temperature ODE integrator.
ODE_RTOL = config('COHTHERM_ODE_RTOL', default=1e-9, cast=float)

# Relative tolerance of the Yukawa radial quadrature.
QUAD_TOL = config('COHTHERM_QUAD_TOL', default=1e-10, cast=float)

# Total occupation below which T_KGF = ħω̄/k_B is flagged as out of regime.
FIELD_NBAR_THRESHOLD = config('COHTHERM_FIELD_NBAR_THRESHOLD', default=10.0, cast=float)


# =============================================================================
# LOGGING
# =============================================================================

LOG_LEVEL = config('COHTHERM_LOG_LEVEL', default='WARNING')
LOG_FILE = config('COHTHERM_LOG_FILE', default='')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        # stdout is reserved for records; logs go to stderr.
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'DEBUG',
        'class': 'logging.handlers.RotatingFileHandler',
        'filename': LOG_FILE,
        'maxBytes': 1024 * 1024 * 15,  # 15MB
        'backupCount': 10,
        'formatter': 'verbose',
    }
    LOGGING['root']['handlers'].append('file')
