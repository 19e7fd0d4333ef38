import csv
import json
import os
from numbers import Integral, Real
from typing import Any, Dict, Iterable, List, Optional, Sequence

import mpmath
import numpy as np
import scipy

from freejacobi import constant
from freejacobi.utils import file_util
from freejacobi.utils.misc_util import format_float, get_milli_time

MANIFEST_FILE_NAME = 'manifest.json'


def format_cell(value: Any) -> str:
	if isinstance(value, (bool, np.bool_)):
		return 'true' if value else 'false'
	if isinstance(value, Integral):
		return str(int(value))
	if isinstance(value, Real):
		return format_float(float(value))
	return str(value)


def to_json_value(value: Any):
	if isinstance(value, dict):
		return {str(k): to_json_value(v) for k, v in value.items()}
	if isinstance(value, (list, tuple, np.ndarray)):
		return [to_json_value(v) for v in value]
	if isinstance(value, (bool, np.bool_)):
		return bool(value)
	if isinstance(value, Integral):
		return int(value)
	if isinstance(value, Real):
		return float(value)
	if isinstance(value, complex):
		return {'re': value.real, 'im': value.imag}
	return value


class RunOutput:
	"""
	An output directory of one run. Every file goes through write_csv or write_json so that the manifest,
	written last, lists all of them with their sha256
	"""
	def __init__(self, out_dir: str, subcommand: str, parameters: Dict[str, Any], seed: Optional[int] = None):
		self.out_dir = out_dir
		self.subcommand = subcommand
		self.parameters = parameters
		self.seed = seed
		self.start_time = get_milli_time()
		self.files: List[str] = []
		self.health: Dict[str, Any] = {}
		file_util.touch_directory(out_dir)

	def path_of(self, file_name: str) -> str:
		return os.path.join(self.out_dir, file_name)

	def __register(self, file_name: str):
		if file_name not in self.files:
			self.files.append(file_name)

	def write_csv(self, file_name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
		file_path = self.path_of(file_name)
		with open(file_path, 'w', encoding='utf8', newline='') as f:
			writer = csv.writer(f, lineterminator='\n')
			writer.writerow(header)
			for row in rows:
				writer.writerow([format_cell(value) for value in row])
		self.__register(file_name)
		return file_path

	def write_json(self, file_name: str, data: Any) -> str:
		file_path = self.path_of(file_name)
		with open(file_path, 'w', encoding='utf8') as f:
			json.dump(to_json_value(data), f, indent=4)
		self.__register(file_name)
		return file_path

	def adopt_file(self, file_name: str) -> str:
		"""
		List a file that some other writer put into the output directory
		"""
		file_path = self.path_of(file_name)
		if not os.path.isfile(file_path):
			raise FileNotFoundError(file_path)
		self.__register(file_name)
		return file_path

	def add_health(self, **counters):
		self.health.update(counters)

	def write_manifest(self) -> str:
		manifest = {
			'schema': constant.MANIFEST_SCHEMA,
			'tool': constant.PACKAGE_NAME,
			'version': constant.VERSION,
			'subcommand': self.subcommand,
			'parameters': self.parameters,
			'seed': self.seed,
			'start_time': self.start_time,
			'library_versions': {
				'numpy': np.__version__,
				'scipy': scipy.__version__,
				'mpmath': mpmath.__version__,
			},
			'files': [
				{
					'name': file_name,
					'sha256': file_util.sha256_file(self.path_of(file_name)),
					'size': os.path.getsize(self.path_of(file_name)),
				}
				for file_name in self.files
			],
			'health': self.health,
		}
		file_path = self.path_of(MANIFEST_FILE_NAME)
		with open(file_path, 'w', encoding='utf8') as f:
			json.dump(to_json_value(manifest), f, indent=4)
		return file_path
