"""Maintenance and acceptance scripts"""
