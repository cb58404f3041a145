import sys

from wlancoex.cli import main

sys.exit(main())
