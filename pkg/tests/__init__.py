import os

# keep test runs from writing logs/capacity_lab.log
os.environ.setdefault('CAPACITY_LAB_LOG_FILE', '0')
