import pytest

from freejacobi.utils.translation import DEFAULT_LANGUAGE, LANGUAGES, Translation, flatten_catalog


@pytest.fixture(scope='module')
def translation() -> Translation:
	return Translation()


def test_languages_share_keys(translation):
	keys = translation.keys(DEFAULT_LANGUAGE)
	assert 'cli.domain_error' in keys
	for language in LANGUAGES:
		assert translation.keys(language) == keys


def test_translate(translation):
	assert translation.translate('output.directory', 'en_us', 'out') == 'Writing output to out'
	assert translation.translate('output.directory', 'fr_fr', 'out') == 'Writing output to out'
	assert 'out' in translation.translate('output.directory', 'zh_cn', 'out')
	with pytest.raises(KeyError):
		translation.translate('cli.missing', 'en_us')


def test_flatten_catalog():
	assert flatten_catalog({'a': {'b': 'x', 'c': {'d': 'y'}}, 'e': 'z'}) == {'a.b': 'x', 'a.c.d': 'y', 'e': 'z'}
	with pytest.raises(TypeError):
		flatten_catalog({'a': 1})
