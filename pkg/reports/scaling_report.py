import json
import os
from datetime import datetime

REPORTS_DIR = 'reports'
RESULTS_FILE = os.path.join(REPORTS_DIR, 'sweep_history.json')
MAX_HISTORY = 50


def sweep_summary(result):
    cfg = result.config
    fit_raw, fit_norm = result.fit_raw, result.fit_normalized
    return {
        'timestamp': datetime.now().isoformat(timespec='seconds'),
        'metric': cfg.metric,
        'n_list': list(cfg.n_list),
        'trials': cfg.trials,
        'base_seed': cfg.base_seed,
        'rows': len(result.rows),
        'failed': result.failures,
        'raw_slope': fit_raw.slope if fit_raw else None,
        'normalized_slope': fit_norm.slope if fit_norm else None,
        'normalized_r2': fit_norm.r_squared if fit_norm else None,
        'output': cfg.output,
    }


def _load(results_file):
    if not os.path.exists(results_file):
        return []
    with open(results_file, 'r') as f:
        return json.load(f)


def save_sweep(result, results_file=RESULTS_FILE):
    folder = os.path.dirname(results_file)
    if folder:
        os.makedirs(folder, exist_ok=True)

    history = _load(results_file)
    history.append(sweep_summary(result))

    if len(history) > MAX_HISTORY:
        history = history[-MAX_HISTORY:]

    with open(results_file, 'w') as f:
        json.dump(history, f, indent=2)

    print(f"Sweep summary saved to {results_file}")
    return history


def _slope(value):
    return 'n/a' if value is None else f"{value:+.4f}"


def print_summary_report(results_file=RESULTS_FILE):
    history = _load(results_file)
    if not history:
        print("No sweep results found. Run a scaling sweep first.")
        return

    print("\n" + "=" * 70)
    print("SCALING SUMMARY REPORT")
    print("=" * 70)

    total_rows = sum(r['rows'] for r in history)
    total_failed = sum(r['failed'] for r in history)
    print(f"Sweeps Recorded:           {len(history)}")
    print(f"Trials Run:                {total_rows:,}")
    print(f"Flagged Trials:            {total_failed:,}")

    latest = {}
    for record in history:
        latest[record['metric']] = record

    print("\nLatest Sweep per Metric:")
    print("-" * 70)
    print(f"{'metric':<20}{'n range':<18}{'raw slope':>11}{'norm slope':>12}{'flagged':>9}")
    for metric, r in sorted(latest.items()):
        n_range = f"{r['n_list'][0]}..{r['n_list'][-1]}"
        print(f"{metric:<20}{n_range:<18}{_slope(r['raw_slope']):>11}"
              f"{_slope(r['normalized_slope']):>12}{r['failed']:>9}")

    print("\n" + "=" * 70 + "\n")


if __name__ == "__main__":
    print_summary_report()
