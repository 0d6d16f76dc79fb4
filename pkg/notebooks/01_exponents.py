# coding: utf-8

# # Exponents, exactly
#
# Exponents are kept as fractions throughout, so 7/3 never turns into
# 2.333... and threshold comparisons are decided exactly.

# In[1]:

from fractions import Fraction

from circrep import (PowerThreshold, circular_critical_exponent, critical_exponent,
                     exponent, is_circularly_power_free, parse_word)


# In[2]:

w, letters = parse_word("alfalfa")
print(exponent(w), w.text, letters)    # 7/3


# The critical exponent is the largest exponent over all factors.  For
# "dividing" the winner is ivi; the circular version also looks at
# factors that wrap around the end.

# In[3]:

w, letters = parse_word("dividing")
value, wit = critical_exponent(w)
print("ordinary", value, wit.factor.text)

value, wit = circular_critical_exponent(w)
print("circular", value, wit.factor.text, wit.replay(w))


# In[4]:

# 5/2 is below 3, so the word is circularly 3-free but not 5/2-free
print(is_circularly_power_free(w, PowerThreshold(3)))
print(is_circularly_power_free(w, PowerThreshold(Fraction(5, 2))))
print(is_circularly_power_free(w, PowerThreshold(Fraction(5, 2), strict=True)))
