import sys

from freejacobi import cli_entry

if __name__ == '__main__':
	sys.exit(cli_entry.main())
