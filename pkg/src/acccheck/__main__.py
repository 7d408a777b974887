import sys

from acccheck.cli import main

sys.exit(main())
