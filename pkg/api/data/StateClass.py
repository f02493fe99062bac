from enum import Enum

class StateClass(Enum):
    """Edge subsets grouped by the number of odd vertices they leave."""
    C0 = 0
    C2 = 2
    C4 = 4

    @staticmethod
    def from_boundary_size(size):
        return StateClass(size)
