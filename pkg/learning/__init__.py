"""
PAMDP EXPLORER - Learning Module
Discrete Q-learning and the continuous actor-critic
"""
