from lexsat.cli import main
import sys

sys.exit(main())
