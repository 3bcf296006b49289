from antenna.beams import beam_count, beam_cut_edges, straddling_pairs
from antenna.models import (
    DEFAULT_EPS_ANG,
    AntennaModel,
    CutSchedule,
    Variant,
    schedule_to_csv,
    separation_angle,
    validate_schedule,
)
from antenna.occupancy import expected_empty_bins, simulate_empty_bins, strip_occupancy, transmitter_reach
from antenna.omni import disk_centers, omni_cut_upper, omni_disk_counts, omni_schedule

__all__ = [
    'AntennaModel', 'CutSchedule', 'DEFAULT_EPS_ANG', 'Variant', 'beam_count', 'beam_cut_edges',
    'disk_centers', 'expected_empty_bins', 'omni_cut_upper', 'omni_disk_counts', 'omni_schedule',
    'schedule_to_csv', 'separation_angle', 'simulate_empty_bins', 'straddling_pairs',
    'strip_occupancy', 'transmitter_reach', 'validate_schedule',
]
