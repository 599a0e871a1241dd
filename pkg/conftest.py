"""Configure Django before pytest imports the per-app tests.py modules."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'coherent_thermo.settings')
django.setup()
