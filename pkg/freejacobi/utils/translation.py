from typing import Dict, List

from ruamel.yaml import YAML

from freejacobi.utils import resources_util

LANGUAGES = ['en_us', 'zh_cn']
DEFAULT_LANGUAGE = 'en_us'


def flatten_catalog(tree: dict, prefix: str = '') -> Dict[str, str]:
	"""
	{'cli': {'start': text}} -> {'cli.start': text}, keeping the file order
	"""
	catalog = {}
	for key, value in tree.items():
		path = key if len(prefix) == 0 else '{}.{}'.format(prefix, key)
		if isinstance(value, dict):
			catalog.update(flatten_catalog(value, path))
		elif isinstance(value, str):
			catalog[path] = value
		else:
			raise TypeError('Message {} should be a string, got {}'.format(path, type(value).__name__))
	return catalog


class Translation:
	"""
	Console message catalogs, one YAML file per language under resources/lang
	"""
	def __init__(self):
		self.catalogs: Dict[str, Dict[str, str]] = {}
		for language in LANGUAGES:
			text = resources_util.get_text('resources/lang/{}.yml'.format(language))
			self.catalogs[language] = flatten_catalog(YAML(typ='safe').load(text))
		keys = self.keys(DEFAULT_LANGUAGE)
		for language in LANGUAGES:
			if self.keys(language) != keys:
				mismatch = sorted(set(keys).symmetric_difference(self.keys(language))) or ['order']
				raise ValueError('Message keys of {} differ from {}: {}'.format(language, DEFAULT_LANGUAGE, ', '.join(mismatch)))

	def keys(self, language: str) -> List[str]:
		return list(self.catalogs[language].keys())

	def translate(self, key: str, language: str, *args) -> str:
		catalog = self.catalogs.get(language, self.catalogs[DEFAULT_LANGUAGE])
		return catalog[key].format(*args)
