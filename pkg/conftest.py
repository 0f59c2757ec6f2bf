"""pytest wiring: configure Django the same way tests/project/manage.py does."""
import os
import sys
from pathlib import Path

import django

sys.path.insert(0, str(Path(__file__).resolve().parent / "tests" / "project"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tests.settings")
django.setup()
