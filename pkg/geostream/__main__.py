import sys

from geostream.cli import main

sys.exit(main())
