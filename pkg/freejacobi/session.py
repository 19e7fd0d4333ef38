import os
from typing import Any, Dict, Optional

from freejacobi.config import Config
from freejacobi.logger import LOG_FILE_NAME, FreeJacobiLogger
from freejacobi.output.run_output import MANIFEST_FILE_NAME, RunOutput
from freejacobi.utils.translation import Translation

EFFECTIVE_CONFIG_FILE = 'config.json'
LOG_DIRECTORY = os.path.dirname(LOG_FILE_NAME)


class FreeJacobiSession:
	"""
	State of one command line invocation: the logger, the effective configuration and the message catalogs
	"""
	def __init__(self):
		self.logger: FreeJacobiLogger = FreeJacobiLogger()
		self.config = Config()
		self.translation = Translation()
		self.logger.set_debug(self.config.get('debug_mode'))

	def load_config(self, config_file: str):
		self.config = Config(config_file)
		self.logger.set_debug(self.config.get('debug_mode'))

	def tr(self, key: str, *args) -> str:
		return self.translation.translate(key, self.config.get('language'), *args)

	def override(self, options: Dict[str, Any]):
		"""
		Command line values win over the config file, None means the flag was not given
		"""
		for option, value in options.items():
			if value is not None:
				self.config.set_value(option, value)
		self.logger.set_debug(self.config.get('debug_mode'))

	def open_output(self, subcommand: str, parameters: Dict[str, Any], seed: Optional[int] = None) -> RunOutput:
		out_dir = self.config.get('out_dir')
		output = RunOutput(out_dir, subcommand, parameters, seed)
		self.logger.set_file_handler(out_dir)
		self.config.write_to_file(output.path_of(EFFECTIVE_CONFIG_FILE))
		output.adopt_file(EFFECTIVE_CONFIG_FILE)
		self.logger.info(self.tr('output.directory', out_dir))
		return output

	def finish_output(self, output: RunOutput) -> str:
		"""
		Closes the log file so that it, and the archives of earlier logs, are hashed into the manifest.
		Later messages reach the console only
		"""
		self.logger.info(self.tr('cli.finished', output.path_of(MANIFEST_FILE_NAME)))
		self.logger.close_file()
		log_dir = output.path_of(LOG_DIRECTORY)
		if os.path.isdir(log_dir):
			for file_name in sorted(os.listdir(log_dir)):
				if os.path.isfile(os.path.join(log_dir, file_name)):
					output.adopt_file('{}/{}'.format(LOG_DIRECTORY, file_name))
		return output.write_manifest()

	def close(self):
		self.logger.close_file()
