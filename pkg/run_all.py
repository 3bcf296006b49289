#!/usr/bin/env python3
import os
import subprocess
import sys
import time

RESULTS_DIR = 'results'

CRITERION_SIZES = '256,512,1024,2048,4096'

# metric -> (n list, trials, extra flags)
SWEEPS = {
    'cut-edges': ('1000,2000,4000,8000', 50, ()),
    'maxflow-nu': (CRITERION_SIZES, 20, ('--radius-mode', 'connectivity')),
    'concurrent-lambda': (CRITERION_SIZES, 20, ('--radius-mode', 'connectivity')),
    'routing-gamma': (CRITERION_SIZES, 20, ('--c-grid', '2')),
    'omni-schedule': (CRITERION_SIZES, 20, ()),
    'single-beam': ('1000,2000,4000,8000,16000', 20, ()),
    'multi-beam': ('1000,2000,4000,8000,16000', 20, ()),
    'beta': ('1000,2000,4000,8000,16000', 1, ()),
}
SANDWICH_SWEEP = (CRITERION_SIZES, 20, ('--c-grid', '2'))


def print_banner():
    banner = """
    ╔════════════════════════════════════════════════════════════════╗
    ║                                                                ║
    ║   Throughput Scaling Lab                                       ║
    ║                                                                ║
    ║   Running every sweep...                                       ║
    ║                                                                ║
    ╚════════════════════════════════════════════════════════════════╝
    """
    print(banner)


def run_cli(*args):
    cmd = [sys.executable, 'main.py', *args]
    start = time.time()
    code = subprocess.run(cmd, cwd=os.getcwd()).returncode
    print(f"   -> exit {code} after {time.time() - start:.1f}s")
    return code


def main():
    print_banner()

    print("\n📋 Prerequisites Check:")
    print("-" * 60)

    required_packages = ['numpy', 'scipy', 'networkx']
    missing_packages = []

    for package in required_packages:
        try:
            __import__(package)
            print(f"✅ {package} installed")
        except ImportError:
            print(f"❌ {package} NOT installed")
            missing_packages.append(package)

    if missing_packages:
        print(f"\n⚠️  Missing packages detected!")
        print(f"Please install them using:")
        print(f"pip install {' '.join(missing_packages)}")
        sys.exit(1)

    print("\n✅ All prerequisites satisfied!\n")
    print("=" * 60)

    os.makedirs(RESULTS_DIR, exist_ok=True)
    failures = []
    steps = len(SWEEPS) + 2
    for i, (metric, (n_list, trials, flags)) in enumerate(SWEEPS.items(), 1):
        print(f"\n[{i}/{steps}] {metric} over n={n_list}, {trials} trials")
        print("=" * 60)
        out = os.path.join(RESULTS_DIR, f"{metric}.csv")
        if run_cli('scaling', '--metric', metric, '--n-list', n_list, '--trials', str(trials),
                   '--out', out, *flags) != 0:
            failures.append(metric)

    n_list, trials, flags = SANDWICH_SWEEP
    print(f"\n[{steps - 1}/{steps}] sandwich over n={n_list}, {trials} trials")
    print("=" * 60)
    if run_cli('sandwich', '--n-list', n_list, '--trials', str(trials),
               '--out', os.path.join(RESULTS_DIR, 'sandwich.csv'), *flags) != 0:
        failures.append('sandwich')

    print(f"\n[{steps}/{steps}] acceptance checks")
    print("=" * 60)
    if run_cli('acceptance', '--out', os.path.join(RESULTS_DIR, 'acceptance.json')) != 0:
        failures.append('acceptance')

    from reports.scaling_report import print_summary_report
    print_summary_report()

    if failures:
        print(f"⚠️  Sweeps with errors or falsification events: {', '.join(failures)}")
        sys.exit(1)
    print(f"✅ All sweeps written to {RESULTS_DIR}/")


if __name__ == "__main__":
    main()
