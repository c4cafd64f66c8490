import sys

from pysatl_sweep.cli import main

sys.exit(main())
