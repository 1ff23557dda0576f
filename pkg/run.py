"""Script to run the command-line tool from a checkout"""
from app.main import main

if __name__ == "__main__":
    main()
