# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

# Adapted from http://code.activestate.com/recipes/577187-python-thread-pool/
# Attribution: Created by Emilio Monti on Sun, 11 Apr 2010 (MIT License).

import os
from queue import Queue
from threading import Thread


def default_num_threads():
    """
    Number of worker threads used when none is requested.

    :rtype: int
    """
    return min(8, os.cpu_count() or 1)


class worker(Thread):
    """
    Thread executing tasks from a given tasks queue until it takes a
    ``None`` task.
    """
    def __init__(self, tasks):
        Thread.__init__(self)
        self.tasks = tasks
        self.daemon = True
        self.start()

    def run(self):
        while True:
            task = self.tasks.get()
            try:
                if task is None:
                    break
                func, args, kargs = task
                func(*args, **kargs)
            finally:
                self.tasks.task_done()


class threadpool:
    """
    Pool of threads consuming tasks from a queue. Used as a context manager
    the workers are stopped on exit; otherwise call :py:meth:`shutdown`.

    :param num_threads: Number of worker threads; defaults to
        :py:func:`default_num_threads`.
    :type num_threads: int
    """
    def __init__(self, num_threads=None):
        num_threads = num_threads or default_num_threads()
        self.tasks = Queue(num_threads)
        self.workers = [worker(self.tasks) for _ in range(num_threads)]

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()
        return False

    def add_task(self, func, *args, **kargs):
        """
        Add a task to the queue.
        """
        self.tasks.put((func, args, kargs))

    def wait_completion(self):
        """
        Wait for completion of all the tasks in the queue.
        """
        self.tasks.join()

    def map(self, func, items):
        """
        Apply ``func`` to every item on the pool's workers and wait for all
        of them.

        :returns: Results in the order of ``items``, whatever order the
            workers finish in.
        :rtype: list
        :raises Exception: The first failure (by item index) is re-raised
            after every task has finished.
        """
        items = list(items)
        results = [None] * len(items)
        errors = [None] * len(items)

        def run(index, item):
            try:
                results[index] = func(item)
            except Exception as e:
                errors[index] = e

        for index, item in enumerate(items):
            self.add_task(run, index, item)
        self.wait_completion()

        for e in errors:
            if e is not None:
                raise e
        return results

    def shutdown(self):
        """
        Stop every worker once the queued tasks are done, and wait for them
        to exit. Calling it again does nothing.
        """
        workers, self.workers = self.workers, []
        for _ in workers:
            self.tasks.put(None)
        for w in workers:
            w.join()
