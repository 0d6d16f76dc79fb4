# coding: utf-8

# # Two uniform morphisms
#
# mu (length 15) and psi (length 4) are both strongly synchronizing.
# The main word is mu applied to the psi fixed point.

# In[1]:

from circrep import MU, PSI, THUE_MORSE, factor_set, is_strongly_synchronizing
from circrep import fixed_point_prefix, lift_power_freeness
from circrep.morphisms import main_word_prefix


# In[2]:

print(MU.q, MU.source_alphabet_size, MU.target_alphabet_size)
print(PSI.q, PSI.source_alphabet_size, PSI.target_alphabet_size)
print(bool(is_strongly_synchronizing(MU)), bool(is_strongly_synchronizing(PSI)))
print(is_strongly_synchronizing(THUE_MORSE))


# In[3]:

print(fixed_point_prefix(PSI, 0, 64).text)
print(main_word_prefix(90).text)


# Factor sets are exact: closed under taking images, then every member is
# found in a prefix short enough to re-check by substring search.

# In[4]:

fs = factor_set(PSI, 0, 20)
print(len(fs.members), fs.prefix_length, fs.source)


# Lifting short squarefreeness of psi to the whole fixed point, and the
# Thue-Morse counterexample (00 is a factor).

# In[5]:

print(lift_power_freeness(PSI, 0, 2).passed)
report = lift_power_freeness(THUE_MORSE, 0, 2)
print(report.passed, report.witnesses)
