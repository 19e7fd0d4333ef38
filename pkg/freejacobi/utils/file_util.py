import hashlib
import os

HASH_CHUNK_SIZE = 1 << 16


def touch_directory(directory_path: str):
	if len(directory_path) > 0 and not os.path.isdir(directory_path):
		os.makedirs(directory_path)


def sha256_file(file_path: str) -> str:
	digest = hashlib.sha256()
	with open(file_path, 'rb') as f:
		while True:
			chunk = f.read(HASH_CHUNK_SIZE)
			if not chunk:
				break
			digest.update(chunk)
	return digest.hexdigest()
