import sys

from trigather.harness.cli import main

sys.exit(main())
