"""
Services package initialization
"""
from .intensity_service import IntensityService
from .count_service import CountService
from .sampler_service import SamplerService
from .experiment_service import ExperimentService

__all__ = [
    'IntensityService',
    'CountService',
    'SamplerService',
    'ExperimentService'
]
