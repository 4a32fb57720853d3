"""
User interface: command-line parsing and console display
"""
