from .movement import PathCursor, MoveResult, advance_along_path
from .congestion import CongestionState, speed_coefficient, update_congestion
