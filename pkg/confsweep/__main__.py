# python -m confsweep
import sys

from confsweep.main import main


sys.exit(main())
