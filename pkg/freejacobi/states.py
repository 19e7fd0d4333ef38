from enum import Enum, auto


class StartKind(Enum):
	haar = auto()
	identity = auto()
	scalar = auto()
	unitary = auto()
	stationary = auto()
	measure = auto()


class Scheme(Enum):
	unitary_corner = auto()
	direct_sde = auto()


class MomentRoute(Enum):
	hypergeometric = auto()
	quadrature = auto()


def parse_enum(enum_class, name: str):
	try:
		return enum_class[name.strip().lower().replace('-', '_')]
	except KeyError:
		raise ValueError('Unknown {} "{}", should be one of {}'.format(
			enum_class.__name__, name, ', '.join(e.name.replace('_', '-') for e in enum_class)
		)) from None
