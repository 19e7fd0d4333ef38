"""
Files shipped inside the freejacobi package: the default configuration and the message catalogs
"""
import pkgutil

from freejacobi import constant


def get_text(path: str) -> str:
	data = pkgutil.get_data(constant.PACKAGE_NAME, path.lstrip('/'))
	if data is None:
		raise FileNotFoundError('Resource {} not found in package {}'.format(path, constant.PACKAGE_NAME))
	return data.decode('utf8')
