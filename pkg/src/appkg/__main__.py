import sys

from appkg.cli import main

sys.exit(main())
