import sys

from nonlocality.cli import main

sys.exit(main())
