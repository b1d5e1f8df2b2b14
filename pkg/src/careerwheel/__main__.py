import sys

from careerwheel.cli import main

sys.exit(main())
