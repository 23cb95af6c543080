if __name__ == '__main__':
    import sys
    from shuttleswarm.bin.shuttleswarm_cli import main

    sys.exit(main())
