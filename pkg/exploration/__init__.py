"""
PAMDP EXPLORER - Exploration Module
Meta-learning and Kalman exploration controllers
"""
