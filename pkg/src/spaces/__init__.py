from src.spaces.generators import PointCloud, HAUSDORFF_DIM, KINDS, generate_space, expected_count
from src.spaces.epsnet import NetSpec, extract_epsnet, SEPARATION_RTOL

__all__ = [
    'PointCloud',
    'HAUSDORFF_DIM',
    'KINDS',
    'generate_space',
    'expected_count',
    'NetSpec',
    'extract_epsnet',
    'SEPARATION_RTOL',
]
