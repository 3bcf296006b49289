import logging
import os

ROOT_LOGGER = 'CapacityLab'


def setup_logger(name=None):
    """Return the project logger, or a child of it for a module name.

    Handlers live on the root project logger and are attached once: a file
    handler under $CAPACITY_LAB_LOG_DIR (default ``logs``) and a console
    handler. ``CAPACITY_LAB_LOG_FILE=0`` skips the file handler.
    """
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(logging.INFO)

    if not root.handlers:
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        if os.environ.get('CAPACITY_LAB_LOG_FILE', '1') != '0':
            log_dir = os.environ.get('CAPACITY_LAB_LOG_DIR', 'logs')
            os.makedirs(log_dir, exist_ok=True)
            fh = logging.FileHandler(os.path.join(log_dir, 'capacity_lab.log'))
            fh.setLevel(logging.INFO)
            fh.setFormatter(formatter)
            root.addHandler(fh)

        ch = logging.StreamHandler()
        ch.setLevel(logging.INFO)
        ch.setFormatter(formatter)
        root.addHandler(ch)

    if not name:
        return root
    return root.getChild(name)
