import sys

from dbhom.cli import main

sys.exit(main())
