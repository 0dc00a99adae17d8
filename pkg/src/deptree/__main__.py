import sys

from deptree.cli import main

sys.exit(main())
