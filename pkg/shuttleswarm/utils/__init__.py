from .geometry import bearing_angle, UndefinedBearingError, equirectangular
