from harness.config import METRICS, NORMALIZERS, ExperimentConfig
from harness.experiment import ExperimentResult, ScalingRow, measure, run_experiment
from harness.netfile import deserialize_network, load_network, save_network, serialize_network
from harness.sandwich import SandwichResult, sandwich_check, sweep_sandwich
from harness.writers import strip_wall_time

__all__ = [
    'METRICS', 'NORMALIZERS', 'ExperimentConfig', 'ExperimentResult', 'SandwichResult', 'ScalingRow',
    'deserialize_network', 'load_network', 'measure', 'run_experiment', 'sandwich_check',
    'save_network', 'serialize_network', 'strip_wall_time', 'sweep_sandwich',
]
