"""
Benchmark time consumption of the exact and fast discriminant paths.

The exact path takes subresultants of f^n(x) - t and its derivative; the
fast path multiplies the critical orbit values and calibrates the sign.

Parameters that are modified:
- Degree of f: 2, 4, 6
- Level n, up to d^n = 64 for the exact path
"""
import warnings
from time import time

import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

from arbocert.discseq import disc_sequence
from arbocert.poly import RatPoly
from arbocert.utils import ArbocertWarning

warnings.simplefilter(action='ignore', category=ArbocertWarning)

POLYS = {
    2: RatPoly([1, 0, 1]),
    4: RatPoly([1, 1, 0, 0, 1]),
    6: RatPoly([1, 1, 0, 0, 0, 0, 1]),
}


def benchmark(d, levels, path):
    t0 = time()
    disc_sequence(POLYS[d], 0, levels, path=path, exact_degree_cap=64)
    return time() - t0


def plot(df, title=''):
    sns.set(style='ticks', palette='muted')
    fig = plt.figure()
    ax = sns.barplot(x='level', y='time', hue='path', data=df)
    ax.set(title=title, xlabel='Level', ylabel='Time in seconds')
    ax.set_yscale('log')
    fig.tight_layout()
    fig.savefig(title.replace(' ', '_').replace('=', '').lower() + '.png')


def loop():
    for d in sorted(POLYS):
        rows = []
        levels = 1
        while d ** levels <= 64:
            for path in ('exact', 'fast'):
                rows.append({'level': levels, 'path': path,
                             'time': benchmark(d, levels, path)})
            levels += 1
        plot(pd.DataFrame(rows), title=f'Discriminant paths d={d}')


if __name__ == '__main__':
    loop()
