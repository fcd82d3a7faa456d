import sys

from facial_thue.cli import main

sys.exit(main())
