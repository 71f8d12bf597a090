import sys

from polar_roadmap.cli.main import main

sys.exit(main())
