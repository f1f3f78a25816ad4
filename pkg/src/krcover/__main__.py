import sys

from krcover.cli import main

sys.exit(main())
