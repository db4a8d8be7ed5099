"""stderr status and progress output"""
