"""
PAMDP EXPLORER - Utils Module
"""
