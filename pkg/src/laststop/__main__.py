import sys

from laststop.cli import main

sys.exit(main())
