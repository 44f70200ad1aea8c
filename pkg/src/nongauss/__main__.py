import sys

from nongauss.cli import main

sys.exit(main())
