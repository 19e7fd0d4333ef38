import logging
import os
import sys
import time
import zipfile
from logging import DEBUG, INFO, FileHandler, Formatter, Logger, StreamHandler
from typing import Optional, TextIO

from colorlog import ColoredFormatter

from freejacobi.utils import file_util

LOGGER_NAME = 'freejacobi'
LOG_FILE_NAME = 'logs/freejacobi.log'

# trials log from worker threads named Trial_n
CONSOLE_FORMAT = '[%(asctime)s] [%(threadName)s/%(log_color)s%(levelname)s%(reset)s]: %(message_log_color)s%(message)s%(reset)s'
FILE_FORMAT = '[%(asctime)s] [%(threadName)s/%(levelname)s] %(module)s: %(message)s'
LEVEL_COLORS = {
	'DEBUG': 'blue',
	'INFO': 'green',
	'WARNING': 'yellow',
	'ERROR': 'red',
	'CRITICAL': 'bold_red',
}
MESSAGE_COLORS = {
	'message': {
		'WARNING': 'yellow',
		'ERROR': 'red',
		'CRITICAL': 'red',
	}
}


def get_logger(logger: Optional[Logger] = None) -> Logger:
	"""
	Library functions log to the logger they are handed, or to the package logger when called on their own
	"""
	return logger if logger is not None else logging.getLogger(LOGGER_NAME)


def archive_log(file_name: str) -> Optional[str]:
	"""
	Move the log of an earlier run in the same output directory into a zip named after its modification day
	"""
	if not os.path.isfile(file_name):
		return None
	directory = os.path.dirname(file_name)
	day = time.strftime('%Y-%m-%d', time.localtime(os.stat(file_name).st_mtime))
	counter = 1
	while os.path.isfile(os.path.join(directory, '{}-{}.zip'.format(day, counter))):
		counter += 1
	zip_file_name = os.path.join(directory, '{}-{}.zip'.format(day, counter))
	with zipfile.ZipFile(zip_file_name, 'w', compression=zipfile.ZIP_DEFLATED) as zipf:
		zipf.write(file_name, arcname=os.path.basename(file_name))
	os.remove(file_name)
	return zip_file_name


class FreeJacobiLogger(Logger):
	"""
	Colored console output goes to stderr, stdout is reserved for the verify verdict. The plain log file
	lives inside the output directory of the run
	"""
	def __init__(self, stream: Optional[TextIO] = None):
		super().__init__(LOGGER_NAME)
		self.file_handler: Optional[FileHandler] = None
		self.console_handler = StreamHandler(stream if stream is not None else sys.stderr)
		self.console_handler.setFormatter(ColoredFormatter(CONSOLE_FORMAT, log_colors=LEVEL_COLORS, secondary_log_colors=MESSAGE_COLORS, datefmt='%H:%M:%S'))
		self.addHandler(self.console_handler)
		self.set_debug(False)

	def set_debug(self, show_debug: bool):
		self.setLevel(DEBUG if show_debug else INFO)

	def set_file_handler(self, out_dir: str) -> str:
		self.close_file()
		file_name = os.path.join(out_dir, LOG_FILE_NAME)
		file_util.touch_directory(os.path.dirname(file_name))
		archive_log(file_name)
		self.file_handler = FileHandler(file_name, encoding='utf8')
		self.file_handler.setFormatter(Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
		self.addHandler(self.file_handler)
		return file_name

	def close_file(self):
		if self.file_handler is not None:
			self.removeHandler(self.file_handler)
			self.file_handler.close()
			self.file_handler = None
