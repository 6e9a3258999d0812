import sys

from theoria.cli import main

sys.exit(main())
