# coding: utf-8

# # Exhaustive searches
#
# Depth-first search over canonical words (a new letter is always the
# smallest unused one).  A search that runs out of extensions is exhausted
# and its length is exact.

# In[1]:

from fractions import Fraction

import numpy as np

from circrep import PowerThreshold, SearchConfig, longest_word, rt, rtc
from circrep import product_exponent, fixed_point_prefix, THUE_MORSE


# Binary circular 4-free words stop at length 11.

# In[2]:

cfg = SearchConfig(2, PowerThreshold(4), circular=True)
res = longest_word(cfg)
print(res.longest_length, res.witness.text, res.exhausted, res.nodes_visited)


# The 147 search: three letters, circular exponent below 13/4 and no
# square shorter than 147.

# In[3]:

cfg = SearchConfig(3, PowerThreshold(Fraction(13, 4)), circular=True, square_bound=147)
res = longest_word(cfg)
print(res.longest_length, res.exhausted, res.nodes_visited, round(res.wall_time_ms))


# Three letters, ordinary 7/4 (= rt(3)) is finite: 38.

# In[4]:

res = longest_word(SearchConfig(3, PowerThreshold(rt(3))))
print(rt(3), rtc(3), res.longest_length)


# Products of factors of Thue-Morse: the largest exponent grows with the
# number of factors.

# In[5]:

tm = fixed_point_prefix(THUE_MORSE, 0, 256)
vals = [product_exponent(tm, i, 16 * i)[0] for i in (1, 2, 3)]
print(vals, np.array([float(v) for v in vals]))
