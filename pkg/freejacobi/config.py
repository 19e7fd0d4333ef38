import json
from typing import Type, Any, Optional

from ruamel.yaml import YAML

from freejacobi.utils import resources_util

DEFAULT_CONFIG = json.loads(resources_util.get_text('resources/default_config.json'))


def is_banner(key: str) -> bool:
	return len(key) == 5 and key[0] == key[1] == key[3] == key[4] == '_'


class Config:
	data: dict

	def __init__(self, config_file: Optional[str] = None):
		self.config_file = config_file
		self.__load()

	def __load(self):
		self.data = {}
		if self.config_file is not None:
			with open(self.config_file, 'r', encoding='utf8') as f:
				loaded = YAML(typ='safe').load(f)
			if loaded is not None and not isinstance(loaded, dict):
				raise ValueError('Config file {} should contain a mapping'.format(self.config_file))
			for key, value in (loaded or {}).items():
				if key not in DEFAULT_CONFIG:
					raise KeyError('Unknown option name: {}'.format(key))
				self.data[key] = value
		self.fill_missing_options()
		for key, value in self.data.items():
			if not is_banner(key):
				self.data[key] = self.convert_to_option_type(key, value)

	def fill_missing_options(self):
		new_data = {}
		for key in DEFAULT_CONFIG.keys():
			new_data[key] = self.data.get(key, DEFAULT_CONFIG[key])
		self.data = new_data

	def get_option_type(self, option: str) -> Type:
		if option not in DEFAULT_CONFIG:
			raise KeyError('Unknown option name: {}'.format(option))
		return type(DEFAULT_CONFIG[option])

	def convert_to_option_type(self, option: str, value: Any) -> Any:
		t = self.get_option_type(option)
		if t == bool:
			value = value in ['True', 'true', 'TRUE', True] or (type(value) is int and value != 0)
		elif t == float:
			value = float(value)
		else:
			value = t(value)
		return value

	def set_value(self, option: str, value: Any):
		self.data[option] = self.convert_to_option_type(option, value)

	def write_to_file(self, file_path: str):
		text = json.dumps(self.data, indent=4)
		for key in self.data.keys():
			if is_banner(key) and key != '__1__':
				p = text.find('    "{}"'.format(key))
				text = text[:p] + '\n' + text[p:]
		with open(file_path, 'w', encoding='utf8') as f:
			f.write(text)

	def get(self, option: str):
		if option in self.data:
			return self.data[option]
		else:
			raise KeyError('Unknown option name: {}'.format(option))
