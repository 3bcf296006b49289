import queue
import threading
from typing import Callable


class TaskHandle:
    """Completion slot for one submitted task."""

    def __init__(self):
        self._done = threading.Event()
        self._result = None
        self._error = None

    def _finish(self, result=None, error=None):
        self._result = result
        self._error = error
        self._done.set()

    def done(self):
        return self._done.is_set()

    def result(self, timeout=None):
        if not self._done.wait(timeout):
            raise TimeoutError("task still running")
        if self._error is not None:
            raise self._error
        return self._result


class ThreadPool:
    def __init__(self, num_workers: int = 4):
        self.num_workers = num_workers
        self.tasks = queue.Queue()
        self.workers = []
        self.shutdown_flag = threading.Event()

        for i in range(self.num_workers):
            w = threading.Thread(target=self._worker, name=f"trial-worker-{i}", daemon=True)
            w.start()
            self.workers.append(w)

    def _worker(self):
        while not self.shutdown_flag.is_set():
            try:
                func, args, kwargs, handle = self.tasks.get(timeout=0.2)
            except queue.Empty:
                continue
            try:
                handle._finish(result=func(*args, **(kwargs or {})))
            except Exception as e:
                # keep the worker alive; the caller sees the error through the handle
                handle._finish(error=e)
            finally:
                self.tasks.task_done()

    def submit(self, func: Callable, *args, **kwargs) -> TaskHandle:
        handle = TaskHandle()
        self.tasks.put((func, args, kwargs, handle))
        return handle

    def get_queue_size(self):
        return self.tasks.qsize()

    def wait(self):
        self.tasks.join()

    def shutdown(self, wait: bool = False):
        self.shutdown_flag.set()
        if wait:
            for w in self.workers:
                w.join(timeout=1)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown(wait=True)
        return False
