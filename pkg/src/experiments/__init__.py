from src.experiments.interfaces import AcceptanceCheck, CheckOutcome, ReportWriter, VerificationRunner
from src.experiments.loaders import ReportLoader
from src.experiments.checks import CHECKS, FunctionCheck, get_check
from src.experiments.pipeline import RunReport, VerificationPipeline, run_verification

__all__ = [
    'AcceptanceCheck',
    'CheckOutcome',
    'ReportWriter',
    'VerificationRunner',
    'ReportLoader',
    'CHECKS',
    'FunctionCheck',
    'get_check',
    'RunReport',
    'VerificationPipeline',
    'run_verification',
]
